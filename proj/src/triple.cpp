#include "expeq/triple.hpp"

#include <algorithm>
#include <numeric>

namespace expeq {

namespace {

Int strip_q(const Factored& f, const std::vector<CommonPrime>& q) {
  Int out = f.value;
  for (const auto& cp : q) {
    Int rest;
    mpz_remove(rest.get_mpz_t(), out.get_mpz_t(), cp.prime.get_mpz_t());
    out = rest;
  }
  return out;
}

Int residual_part(const std::vector<CommonPrime>& residual, unsigned CommonPrime::*field) {
  Int out = 1;
  for (const auto& cp : residual) out *= pow(cp.prime, cp.*field);
  return out;
}

}  // namespace

std::vector<Int> Triple::q_primes() const {
  std::vector<Int> out;
  for (const auto& cp : common_) out.push_back(cp.prime);
  return out;
}

const CommonPrime& Triple::exponents(const Int& p) const {
  for (const auto& cp : common_)
    if (cp.prime == p) return cp;
  throw ArgumentError(p.get_str() + " is not in Q");
}

bool Triple::in_q(const Int& p) const {
  return std::any_of(common_.begin(), common_.end(),
                     [&](const CommonPrime& cp) { return cp.prime == p; });
}

Triple build_triple(const Int& a, const Int& b, const Int& c) {
  if (a < 2 || b < 2 || c < 2)
    throw ArgumentError("triple values must all be >= 2, got (" + a.get_str() + ", " +
                        b.get_str() + ", " + c.get_str() + ")");
  Triple t;
  t.a_ = a;
  t.b_ = b;
  t.c_ = c;
  t.fa_ = factorize(a);
  t.fb_ = factorize(b);
  t.fc_ = factorize(c);
  for (const auto& pa : t.fa_.factors) {
    unsigned eb = t.fb_.exponent_of(pa.prime);
    unsigned ec = t.fc_.exponent_of(pa.prime);
    if (eb > 0 && ec > 0) t.common_.push_back({pa.prime, pa.exponent, eb, ec});
  }
  t.a1_ = strip_q(t.fa_, t.common_);
  t.b1_ = strip_q(t.fb_, t.common_);
  t.c1_ = strip_q(t.fc_, t.common_);
  return t;
}

Int GDecomposition::residual_part_a() const { return residual_part(residual, &CommonPrime::alpha); }
Int GDecomposition::residual_part_b() const { return residual_part(residual, &CommonPrime::beta); }
Int GDecomposition::residual_part_c() const { return residual_part(residual, &CommonPrime::gamma); }

ProportionalityError::ProportionalityError(Int p, Int q)
    : ArgumentError("exponents of " + p.get_str() + " and " + q.get_str() +
                    " are not proportional"),
      first_(std::move(p)),
      second_(std::move(q)) {}

bool proportional(const CommonPrime& p, const CommonPrime& q) {
  auto cross = [](unsigned l1, unsigned r2, unsigned l2, unsigned r1) {
    return std::uint64_t{l1} * r2 == std::uint64_t{l2} * r1;
  };
  return cross(p.alpha, q.beta, q.alpha, p.beta) && cross(p.alpha, q.gamma, q.alpha, p.gamma);
}

GDecomposition g_decomposition(const Triple& t, std::span<const Int> q1) {
  if (q1.empty()) throw ArgumentError("g_decomposition: Q1 must be nonempty");
  std::vector<Int> chosen(q1.begin(), q1.end());
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());

  std::vector<CommonPrime> members;
  for (const auto& p : chosen) members.push_back(t.exponents(p));
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (!proportional(members[i], members[j]))
        throw ProportionalityError(members[i].prime, members[j].prime);

  GDecomposition out;
  out.class_primes = chosen;
  unsigned h = 0;
  for (const auto& m : members) h = std::gcd(h, m.alpha);
  out.g = 1;
  for (const auto& m : members) {
    unsigned w = m.alpha / h;
    out.weights.push_back(w);
    out.g *= pow(m.prime, w);
  }
  // With gcd(t_i) = 1, beta_i = j * t_i forces j to be an integer.
  out.alpha_g = h;
  out.beta_g = members.front().beta / out.weights.front();
  out.gamma_g = members.front().gamma / out.weights.front();
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i].beta != out.beta_g * out.weights[i] ||
        members[i].gamma != out.gamma_g * out.weights[i])
      throw InvariantError("g_decomposition: non-integral exponent split");
  }
  for (const auto& cp : t.common())
    if (!std::binary_search(chosen.begin(), chosen.end(), cp.prime)) out.residual.push_back(cp);
  return out;
}

std::vector<std::vector<Int>> maximal_proportional_classes(const Triple& t) {
  std::vector<std::vector<Int>> classes;
  std::vector<const CommonPrime*> leaders;
  for (const auto& cp : t.common()) {
    auto it = std::find_if(leaders.begin(), leaders.end(),
                           [&](const CommonPrime* l) { return proportional(*l, cp); });
    if (it == leaders.end()) {
      leaders.push_back(&cp);
      classes.push_back({cp.prime});
    } else {
      classes[static_cast<std::size_t>(it - leaders.begin())].push_back(cp.prime);
    }
  }
  return classes;
}

}  // namespace expeq
