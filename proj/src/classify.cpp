#include "expeq/classify.hpp"

#include <algorithm>
#include <numeric>

namespace expeq {

namespace {

using u64 = std::uint64_t;

// Primes of a Q-free part, from the factorization of the full value.
std::vector<Int> free_primes(const Factored& f, const Triple& t) {
  std::vector<Int> out;
  for (const auto& pp : f.factors)
    if (!t.in_q(pp.prime)) out.push_back(pp.prime);
  return out;
}

Int prod_pow(const std::vector<std::pair<Int, u64>>& parts) {
  Int out = 1;
  for (const auto& [q, e] : parts) out *= pow(q, e);
  return out;
}

}  // namespace

char to_char(TypeTag t) {
  switch (t) {
    case TypeTag::A: return 'A';
    case TypeTag::B: return 'B';
    case TypeTag::C: return 'C';
    case TypeTag::O: return 'O';
  }
  return '?';
}

TypeTag TypeProfile::tag_at(const Int& p) const {
  for (const auto& e : primes)
    if (e.prime == p) return e.tag;
  throw ArgumentError(p.get_str() + " is not in Q");
}

std::optional<TypeTag> TypeProfile::uniform() const {
  if (primes.empty()) return std::nullopt;
  for (const auto& e : primes)
    if (e.tag != primes.front().tag) return std::nullopt;
  return primes.front().tag;
}

TypeTag classify_values(u64 ax, u64 by, u64 cz) {
  if (ax == by && by == cz) return TypeTag::O;
  if (ax > by && by == cz) return TypeTag::A;
  if (by > ax && ax == cz) return TypeTag::B;
  if (cz > ax && ax == by) return TypeTag::C;
  throw InvariantError("two smallest of (" + std::to_string(ax) + ", " + std::to_string(by) +
                       ", " + std::to_string(cz) + ") differ");
}

TypeProfile type_profile(const Triple& t, const Solution& s) {
  if (t.common().empty())
    throw ArgumentError("Q is empty: gcd(a, b, c) = 1");
  if (!satisfies(t, s)) throw ArgumentError("not a solution");
  TypeProfile out{s, {}};
  for (const auto& cp : t.common()) {
    PrimeType e{cp.prime, TypeTag::O, u64{cp.alpha} * s.x, u64{cp.beta} * s.y,
                u64{cp.gamma} * s.z};
    e.tag = classify_values(e.ax, e.by, e.cz);
    out.primes.push_back(e);
  }
  return out;
}

ReducedData type_a_data(const Triple& t, const Int& p, const Solution& sol) {
  if (type_profile(t, sol).tag_at(p) != TypeTag::A)
    throw ArgumentError("solution is not Type A at " + p.get_str());
  const auto& ep = t.exponents(p);
  ReducedData d;
  d.p = p;
  unsigned g = std::gcd(ep.beta, ep.gamma);
  d.t = ep.beta / g;
  d.s = ep.gamma / g;
  if (sol.y % d.s != 0) throw InvariantError("y not divisible by s");
  d.n = sol.y / d.s;
  if (sol.z != d.n * d.t) throw InvariantError("z != n t");

  const u64 n = d.n, s = d.s, tt = d.t;
  std::vector<std::pair<Int, u64>> r_parts, s_parts, d_parts, res_parts;
  for (const auto& cq : t.common()) {
    u64 lhs = u64{cq.beta} * s, rhs = u64{cq.gamma} * tt;
    if (lhs > rhs) {
      d.set_b.push_back(cq.prime);
      s_parts.push_back({cq.prime, lhs - rhs});
    } else if (lhs < rhs) {
      d.set_c.push_back(cq.prime);
      r_parts.push_back({cq.prime, rhs - lhs});
    } else {
      d.set_a.push_back(cq.prime);
      u64 ax = u64{cq.alpha} * sol.x, cut = u64{cq.gamma} * n * tt;
      if (ax < cut) throw InvariantError("negative exponent in the reduced right side");
      res_parts.push_back({cq.prime, ax - cut});
    }
    d_parts.push_back({cq.prime, n * std::min(lhs, rhs)});
  }
  d.R = pow(t.c1(), tt) * prod_pow(r_parts);
  d.S = pow(t.b1(), s) * prod_pow(s_parts);
  d.D = prod_pow(d_parts);
  d.f = pow(d.R, d.n) - pow(d.S, d.n);
  d.residual = pow(t.a1(), sol.x) * prod_pow(res_parts);
  if (d.f != d.residual) throw InvariantError("R^n - S^n differs from the reduced right side");
  if (d.D * d.f != pow(t.a(), sol.x)) throw InvariantError("D f(n) != a^x");

  d.f_primes = free_primes(t.fa(), t);
  for (const auto& [q, e] : res_parts)
    if (e > 0) d.f_primes.push_back(q);
  std::sort(d.f_primes.begin(), d.f_primes.end());
  return d;
}

ReducedData type_c_data(const Triple& t, const Int& p, const Solution& sol) {
  if (type_profile(t, sol).tag_at(p) != TypeTag::C)
    throw ArgumentError("solution is not Type C at " + p.get_str());
  const auto& ep = t.exponents(p);
  ReducedData d;
  d.p = p;
  unsigned g = std::gcd(ep.alpha, ep.beta);
  d.r = ep.beta / g;
  d.s = ep.alpha / g;
  if (sol.x % d.r != 0) throw InvariantError("x not divisible by r");
  d.n = sol.x / d.r;
  if (sol.y != d.n * d.s) throw InvariantError("y != n s");

  const u64 n = d.n, r = d.r, s = d.s;
  std::vector<std::pair<Int, u64>> r_parts, s_parts, d_parts, res_parts;
  for (const auto& cq : t.common()) {
    u64 lhs = u64{cq.alpha} * r, rhs = u64{cq.beta} * s;
    if (lhs > rhs) {
      d.set_a.push_back(cq.prime);
      r_parts.push_back({cq.prime, lhs - rhs});
    } else if (lhs < rhs) {
      d.set_b.push_back(cq.prime);
      s_parts.push_back({cq.prime, rhs - lhs});
    } else {
      d.set_c.push_back(cq.prime);
      u64 cz = u64{cq.gamma} * sol.z, cut = u64{cq.alpha} * n * r;
      if (cz < cut) throw InvariantError("negative exponent in the reduced right side");
      res_parts.push_back({cq.prime, cz - cut});
    }
    d_parts.push_back({cq.prime, n * std::min(lhs, rhs)});
  }
  d.R = pow(t.a1(), r) * prod_pow(r_parts);
  d.S = pow(t.b1(), s) * prod_pow(s_parts);
  d.D = prod_pow(d_parts);
  d.f = pow(d.R, d.n) + pow(d.S, d.n);
  d.residual = pow(t.c1(), sol.z) * prod_pow(res_parts);
  if (d.f != d.residual) throw InvariantError("R^n + S^n differs from the reduced right side");
  if (d.D * d.f != pow(t.c(), sol.z)) throw InvariantError("D f(n) != c^z");

  d.f_primes = free_primes(t.fc(), t);
  for (const auto& [q, e] : res_parts)
    if (e > 0) d.f_primes.push_back(q);
  std::sort(d.f_primes.begin(), d.f_primes.end());
  return d;
}

std::vector<DominanceViolation> dominance_screen(const Triple& t,
                                                 std::span<const TypeProfile> profiles) {
  std::vector<DominanceViolation> out;
  const auto& q = t.common();
  for (const auto& cp : q) {
    for (const auto& cq : q) {
      if (cp.prime == cq.prime) continue;
      bool dominant = u64{cp.alpha} * cq.beta > u64{cq.alpha} * cp.beta &&
                      u64{cp.alpha} * cq.gamma > u64{cq.alpha} * cp.gamma;
      if (!dominant) continue;
      for (std::size_t i = 0; i < profiles.size(); ++i) {
        TypeTag tag = profiles[i].tag_at(cp.prime);
        if (tag != TypeTag::A) out.push_back({i, cp.prime, cq.prime, tag});
      }
    }
  }
  return out;
}

std::vector<DominanceViolation> dominance_screen(const Triple& t,
                                                 std::span<const Solution> solutions) {
  if (t.common().size() < 2) return {};
  std::vector<TypeProfile> profiles;
  for (const auto& s : solutions) profiles.push_back(type_profile(t, s));
  return dominance_screen(t, std::span<const TypeProfile>(profiles));
}

std::vector<std::pair<Int, std::size_t>> type_o_census(const Triple& t,
                                                       std::span<const Solution> solutions) {
  std::vector<std::pair<Int, std::size_t>> out;
  for (const auto& cp : t.common()) out.push_back({cp.prime, 0});
  for (const auto& s : solutions) {
    auto prof = type_profile(t, s);
    for (std::size_t i = 0; i < prof.primes.size(); ++i)
      if (prof.primes[i].tag == TypeTag::O) ++out[i].second;
  }
  for (const auto& [p, n] : out)
    if (n > 1)
      throw InvariantError(std::to_string(n) + " Type-O solutions at " + p.get_str());
  return out;
}

RigidShape f_rigid_shape(const Triple& t) {
  if (t.common().size() != 1 || t.common().front().prime != 2 || t.a1() != 1)
    return RigidShape::none;
  const Int &b1 = t.b1(), &c1 = t.c1();
  if (b1 == 1 && c1 == 3) return RigidShape::one_three;
  if (b1 == 7 && c1 == 3) return RigidShape::seven_three;
  if (c1 == b1 + 2) {
    Int m = b1 + 1;
    if (mpz_popcount(m.get_mpz_t()) == 1 && m >= 4) return RigidShape::mersenne_pair;
  }
  return RigidShape::none;
}

}  // namespace expeq
