#include "expeq/families.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace expeq {

namespace {

constexpr unsigned long kMaxExponent = 1ul << 16;

class ParamReader {
 public:
  ParamReader(const ParamMap& m, std::vector<std::string>& violations)
      : m_(m), v_(violations) {}

  std::optional<Int> need(const std::string& name) {
    auto p = param(m_, name);
    if (!p) v_.push_back("missing parameter " + name);
    return p;
  }
  std::optional<Int> maybe(const std::string& name) const { return param(m_, name); }

  void check(bool ok, const std::string& what) {
    if (!ok) v_.push_back(what);
  }

  // Parameter used as an exponent: must fit comfortably in an unsigned long.
  unsigned long exponent(const Int& v, const std::string& name) {
    if (v > kMaxExponent) {
      v_.push_back(name + " too large to use as an exponent");
      return 0;
    }
    return v < 0 ? 0 : v.get_ui();
  }

  void unknown(std::initializer_list<const char*> allowed) {
    for (const auto& [k, _] : m_) {
      bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; });
      if (!ok) v_.push_back("unknown parameter " + k);
    }
  }

 private:
  const ParamMap& m_;
  std::vector<std::string>& v_;
};

unsigned two_adic(const Int& n) {
  return n == 0 ? 0 : static_cast<unsigned>(mpz_scan1(n.get_mpz_t(), 0));
}

Int odd_part(const Int& n) {
  Int out;
  mpz_tdiv_q_2exp(out.get_mpz_t(), n.get_mpz_t(), two_adic(n));
  return out;
}

bool is_odd(const Int& n) { return mpz_odd_p(n.get_mpz_t()) != 0; }

GenResult finish(GenResult r, const Int& a, const Int& b, const Int& c, Solution s1,
                 Solution s2) {
  NineTuple n{a, b, c, s1, s2};
  if (!satisfies(a, b, c, s1) || !satisfies(a, b, c, s2))
    throw InvariantError("generated nine-tuple fails substitution: " + n.str());
  r.nine = n;
  return r;
}

GenResult gen_I(const ParamMap& m) {
  GenResult r;
  ParamReader p(m, r.violations);
  p.unknown({"u", "h"});
  auto u = p.need("u"), h = p.need("h");
  if (!u || !h) return r;
  p.check(*u > 0, "u must be > 0");
  p.check(*h > 1, "h must be > 1");
  unsigned long U = p.exponent(*u, "u"), H = p.exponent(*h, "h");
  if (!r.violations.empty()) return r;
  r.params = {{"u", *u}, {"h", *h}};
  Int pu = pow(Int(2), U), ph = pow(Int(2), H - 1);
  auto U32 = static_cast<unsigned>(U), H32 = static_cast<unsigned>(H);
  return finish(std::move(r), 2, pu * (ph - 1), pu * (ph + 1), {U32 + 1, 1, 1},
                {2 * U32 + H32 + 1, 2, 2});
}

GenResult gen_II(const ParamMap& m) {
  GenResult r;
  ParamReader p(m, r.violations);
  p.unknown({"t"});
  auto t = p.need("t");
  if (!t) return r;
  p.check(*t > 0, "t must be > 0");
  auto T = static_cast<unsigned>(p.exponent(*t, "t"));
  if (!r.violations.empty()) return r;
  r.params = {{"t", *t}};
  return finish(std::move(r), 2 * pow(Int(3), T), 3, 3, {1, T, T + 1}, {3, 3 * T, 3 * T + 2});
}

GenResult gen_III(const ParamMap& m) {
  GenResult r;
  ParamReader p(m, r.violations);
  p.unknown({"g", "j", "u", "d", "k", "w"});
  auto g = p.need("g"), j = p.need("j"), u = p.need("u"), d = p.need("d"), k = p.need("k");
  if (!g || !j || !u || !d || !k) return r;
  p.check(*j > 0, "j must be > 0");
  p.check(*u > 0, "u must be > 0");
  p.check(*d > 0, "d must be > 0");
  p.check(*g > 1 && is_odd(*g), "g must be odd and > 1");
  p.check(*k > 1, "k must be > 1");
  unsigned long J = p.exponent(*j, "j"), U = p.exponent(*u, "u"), K = p.exponent(*k, "k");
  if (!r.violations.empty()) return r;

  Int D = pow(*d + 1, K) - pow(*d, K);
  Int w;
  if (auto given = p.maybe("w")) {
    w = *given;
    p.check(w > 0, "w must be > 0");
    if (w > 0) p.check(w <= kMaxExponent && pow(*g, w.get_ui()) == D, "(d+1)^k - d^k != g^w");
  } else if (auto e = as_power_of(*g, D)) {
    w = *e;
  } else {
    r.violations.push_back("(d+1)^k - d^k = " + D.get_str() + " is not a power of g");
  }
  if (!r.violations.empty()) return r;
  p.check(w % J == 0, "j must divide w");
  if (!r.violations.empty()) return r;

  r.params = {{"g", *g}, {"j", *j}, {"u", *u}, {"d", *d}, {"k", *k}, {"w", w}};
  auto x2 = static_cast<unsigned>(K * U + w.get_ui() / J);
  Int gju = pow(*g, J * U);
  return finish(std::move(r), pow(*g, J), gju * *d, gju * (*d + 1),
                {static_cast<unsigned>(U), 1, 1},
                {x2, static_cast<unsigned>(K), static_cast<unsigned>(K)});
}

GenResult gen_IV(const ParamMap& m) {
  GenResult r;
  ParamReader p(m, r.violations);
  p.unknown({"g", "i", "j", "u", "d", "k", "w", "h", "v"});
  auto g = p.need("g"), i = p.need("i"), j = p.need("j"), u = p.need("u"), d = p.need("d"),
       k = p.need("k");
  if (!g || !i || !j || !u || !d || !k) return r;
  p.check(*i > 0, "i must be > 0");
  p.check(*j > 0, "j must be > 0");
  p.check(*u > 0, "u must be > 0");
  p.check(*d > 0 && is_odd(*d), "d must be odd and > 0");
  p.check(*d != 1, "d must not be 1");
  p.check(*g > 1 && is_odd(*g), "g must be odd and > 1");
  p.check(*k > 0 && !is_odd(*k), "k must be even and > 0");
  unsigned long I = p.exponent(*i, "i"), J = p.exponent(*j, "j"), U = p.exponent(*u, "u"),
                K = p.exponent(*k, "k");
  if (!r.violations.empty()) return r;

  Int D = pow(*d + 2, K) - pow(*d, K);
  Int odd = odd_part(D);
  Int w;
  if (auto given = p.maybe("w")) {
    w = *given;
    p.check(w > 0, "w must be > 0");
    if (w > 0)
      p.check(w <= kMaxExponent && pow(*g, w.get_ui()) == odd,
              "g^w is not the greatest odd divisor of (d+2)^k - d^k");
  } else if (auto e = as_power_of(*g, odd)) {
    w = *e;
  } else {
    r.violations.push_back("greatest odd divisor of (d+2)^k - d^k = " + odd.get_str() +
                           " is not a power of g");
  }
  if (!r.violations.empty()) return r;

  long h = two_adic(2 * *d + 2), v = two_adic(*k);
  if (auto given = p.maybe("h")) p.check(*given == h, "h must satisfy 2^h || 2d+2");
  if (auto given = p.maybe("v")) p.check(*given == v, "v must satisfy 2^v || k");
  p.check(w % J == 0, "j must divide w");
  if (!r.violations.empty()) return r;
  Int iwj = Int(I) * w / J;
  p.check(Int(static_cast<long>(K) - v) == Int(h) - iwj, "k - v must equal h - iw/j");
  if (!r.violations.empty()) return r;

  r.params = {{"g", *g}, {"i", *i}, {"j", *j}, {"u", *u}, {"d", *d},
              {"k", *k}, {"w", w},  {"h", Int(h)}, {"v", Int(v)}};
  Int scale = pow(Int(2), I * U - 1) * pow(*g, J * U);
  auto x2 = static_cast<unsigned>(K * U + w.get_ui() / J);
  return finish(std::move(r), pow(Int(2), I) * pow(*g, J), scale * *d, scale * (*d + 2),
                {static_cast<unsigned>(U), 1, 1},
                {x2, static_cast<unsigned>(K), static_cast<unsigned>(K)});
}

// Cheap size guard before forming base^e for a divisibility test.
bool may_divide(const Int& base, unsigned long e, const Int& n) {
  return (bit_length(base) - 1) * e <= bit_length(n);
}

void try_candidate(Family f, const ParamMap& m, const NineTuple& target,
                   std::vector<FamilyWitness>& out) {
  auto r = gen_family(f, m);
  if (r.nine && *r.nine == target) out.push_back({f, r.params, *r.nine, {0, 1}});
}

std::array<Int, 4> terms_of(const NineTuple& n) {
  return {pow(n.a, n.s1.x), pow(n.b, n.s1.y), pow(n.a, n.s2.x), pow(n.b, n.s2.y)};
}

// Candidate parameter maps for a member whose terms are A^X1 = t1a,
// B^Y1 = t1b, B^Y2 = t2b. The caller regenerates and checks every term.
std::vector<std::pair<Family, ParamMap>> solve_from_terms(const Int& t1a, const Int& t1b,
                                                          const Int& t2b) {
  std::vector<std::pair<Family, ParamMap>> out;
  if (auto x1 = as_power_of(Int(2), t1a); x1 && *x1 >= 2) {
    unsigned long u = *x1 - 1;
    if (may_divide(Int(2), u, t1b) && t1b % pow(Int(2), u) == 0) {
      Int rest = t1b / pow(Int(2), u) + 1;
      if (auto hm1 = as_power_of(Int(2), rest))
        out.push_back({Family::I, {{"u", Int(u)}, {"h", Int(*hm1 + 1)}}});
    }
  }
  if (auto t = as_power_of(Int(3), t1b)) out.push_back({Family::II, {{"t", Int(*t)}}});

  auto k = as_power_of(t1b, t2b);
  if (!k) return out;
  for (const auto& [A, u] : power_representations(t1a)) {
    for (const auto& [g, j] : power_representations(A)) {
      if (!is_odd(g) || g < 3) continue;
      unsigned long ju = static_cast<unsigned long>(j) * u;
      if (!may_divide(g, ju, t1b)) continue;
      Int gju = pow(g, ju);
      if (t1b % gju == 0)
        out.push_back({Family::III,
                       {{"g", g}, {"j", Int(j)}, {"u", Int(u)}, {"d", t1b / gju}, {"k", Int(*k)}}});
    }
    unsigned i = two_adic(A);
    if (i == 0) continue;
    Int oddA = odd_part(A);
    if (oddA < 3) continue;
    for (const auto& [g, j] : power_representations(oddA)) {
      unsigned long ju = static_cast<unsigned long>(j) * u;
      unsigned long shift = static_cast<unsigned long>(i) * u - 1;
      if (!may_divide(g, ju, t1b) || shift > bit_length(t1b)) continue;
      Int scale = pow(Int(2), shift) * pow(g, ju);
      if (t1b % scale == 0)
        out.push_back({Family::IV,
                       {{"g", g}, {"i", Int(i)}, {"j", Int(j)}, {"u", Int(u)}, {"d", t1b / scale},
                        {"k", Int(*k)}}});
    }
  }
  return out;
}

bool corresponds_to(const NineTuple& n, int idx, const NineTuple& k, int kidx) {
  return correspond(n.a, n.b, idx == 0 ? n.s1 : n.s2, k.a, k.b, kidx == 0 ? k.s1 : k.s2);
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::I: return "I";
    case Family::II: return "II";
    case Family::III: return "III";
    case Family::IV: return "IV";
  }
  return "?";
}

std::optional<Family> parse_family(const std::string& s) {
  std::string u;
  for (char ch : s) u += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (u == "I" || u == "1") return Family::I;
  if (u == "II" || u == "2") return Family::II;
  if (u == "III" || u == "3") return Family::III;
  if (u == "IV" || u == "4") return Family::IV;
  return std::nullopt;
}

std::optional<Int> param(const ParamMap& m, const std::string& name) {
  for (const auto& [k, v] : m)
    if (k == name) return v;
  return std::nullopt;
}

std::string format_params(const ParamMap& m) {
  std::string out;
  for (const auto& [k, v] : m) {
    if (!out.empty()) out += ' ';
    out += k + '=' + v.get_str();
  }
  return out;
}

std::string NineTuple::str() const {
  auto s = [](const Solution& v) {
    return std::to_string(v.x) + "," + std::to_string(v.y) + "," + std::to_string(v.z);
  };
  return "(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ", " + s(s1) + ", " + s(s2) +
         ")";
}

GenResult gen_family(Family f, const ParamMap& params) {
  switch (f) {
    case Family::I: return gen_I(params);
    case Family::II: return gen_II(params);
    case Family::III: return gen_III(params);
    case Family::IV: return gen_IV(params);
  }
  throw ArgumentError("unknown family");
}

bool witness_less(const FamilyWitness& l, const FamilyWitness& r) {
  if (l.family != r.family) return l.family < r.family;
  std::size_t n = std::min(l.params.size(), r.params.size());
  for (std::size_t i = 0; i < n; ++i)
    if (l.params[i].second != r.params[i].second) return l.params[i].second < r.params[i].second;
  if (l.params.size() != r.params.size()) return l.params.size() < r.params.size();
  return l.matching < r.matching;
}

std::vector<FamilyWitness> all_F_witnesses(const NineTuple& n) {
  std::vector<FamilyWitness> out;
  const auto &s1 = n.s1, &s2 = n.s2;
  if (n.a == 2 && s1.y == 1 && s1.z == 1 && s2.y == 2 && s2.z == 2 && s1.x >= 2 &&
      s2.x > 2 * (s1.x - 1) + 2)
    try_candidate(Family::I, {{"u", Int(s1.x - 1)}, {"h", Int(s2.x - 2 * (s1.x - 1) - 1)}}, n,
                  out);
  if (s1.x == 1) try_candidate(Family::II, {{"t", Int(s1.y)}}, n, out);

  if (s1.y == 1 && s1.z == 1 && s2.y == s2.z && s2.y >= 2) {
    unsigned long u = s1.x, k = s2.y;
    for (const auto& [g, j] : power_representations(n.a)) {
      if (!is_odd(g) || g < 3) continue;
      if (!may_divide(g, j * u, n.b)) continue;
      Int gju = pow(g, j * u);
      if (n.b % gju == 0)
        try_candidate(Family::III,
                      {{"g", g}, {"j", Int(j)}, {"u", Int(u)}, {"d", n.b / gju}, {"k", Int(k)}}, n,
                      out);
    }
    unsigned i = two_adic(n.a);
    Int oddA = odd_part(n.a);
    if (i > 0 && oddA >= 3) {
      for (const auto& [g, j] : power_representations(oddA)) {
        unsigned long shift = i * u - 1;
        if (!may_divide(g, j * u, n.b) || shift > bit_length(n.b)) continue;
        Int scale = pow(Int(2), shift) * pow(g, j * u);
        if (n.b % scale == 0)
          try_candidate(Family::IV,
                        {{"g", g}, {"i", Int(i)}, {"j", Int(j)}, {"u", Int(u)}, {"d", n.b / scale},
                         {"k", Int(k)}},
                        n, out);
      }
    }
  }
  std::sort(out.begin(), out.end(), witness_less);
  return out;
}

std::optional<FamilyWitness> in_F(const NineTuple& nine) {
  auto all = all_F_witnesses(nine);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::string to_string(MembershipStatus s) {
  switch (s) {
    case MembershipStatus::member: return "member";
    case MembershipStatus::absent: return "absent";
    case MembershipStatus::bound_exhausted: return "bound_exhausted";
  }
  return "?";
}

Membership in_family(const NineTuple& nine, unsigned budget_bits) {
  auto t = terms_of(nine);
  unsigned largest = 0;
  for (const auto& v : t) largest = std::max(largest, bit_length(v));
  Membership out;
  out.bound_bits = budget_bits == 0 ? 2 * largest : budget_bits;
  if (largest > out.bound_bits) {
    out.status = MembershipStatus::bound_exhausted;
    return out;
  }
  // terms of input solution i, oriented: o = 0 keeps (a^x, b^y), o = 1 swaps.
  auto term = [&](int sol, int o, int which) -> const Int& {
    return t[static_cast<std::size_t>(2 * sol + (which ^ o))];
  };
  std::vector<FamilyWitness> found;
  for (int first = 0; first < 2; ++first) {
    int second = 1 - first;
    for (int o1 = 0; o1 < 2; ++o1) {
      for (int o2 = 0; o2 < 2; ++o2) {
        const Int &t1a = term(first, o1, 0), &t1b = term(first, o1, 1);
        const Int &t2a = term(second, o2, 0), &t2b = term(second, o2, 1);
        for (auto& [fam, params] : solve_from_terms(t1a, t1b, t2b)) {
          auto r = gen_family(fam, params);
          if (!r.nine) continue;
          const auto& m = *r.nine;
          if (pow(m.a, m.s1.x) == t1a && pow(m.b, m.s1.y) == t1b && pow(m.a, m.s2.x) == t2a &&
              pow(m.b, m.s2.y) == t2b)
            found.push_back({fam, r.params, m, {first, second}});
        }
      }
    }
  }
  if (found.empty()) {
    out.status = MembershipStatus::absent;
    return out;
  }
  out.status = MembershipStatus::member;
  out.witness = *std::min_element(found.begin(), found.end(), witness_less);
  return out;
}

Membership classify_nine(const NineTuple& nine, unsigned budget_bits) {
  if (gcd(nine.a, nine.b) == 1) throw ArgumentError("classify_nine: gcd(a, b) = 1");
  if (!satisfies(nine.a, nine.b, nine.c, nine.s1) || !satisfies(nine.a, nine.b, nine.c, nine.s2))
    throw ArgumentError("classify_nine: not a pair of solutions: " + nine.str());
  if (nine.s1 == nine.s2) throw ArgumentError("classify_nine: solutions coincide");
  if (correspond(nine.a, nine.b, nine.s1, nine.a, nine.b, nine.s2))
    throw ArgumentError("classify_nine: the two solutions correspond");
  return in_family(nine, budget_bits);
}

NineTuple normalize(const NineTuple& nine) {
  NineTuple n = nine;
  auto pa = primitive_power(n.a), pb = primitive_power(n.b), pc = primitive_power(n.c);
  n.a = pa.base;
  n.b = pb.base;
  n.c = pc.base;
  for (Solution* s : {&n.s1, &n.s2}) {
    s->x *= pa.exponent;
    s->y *= pb.exponent;
    s->z *= pc.exponent;
  }
  if (n.a > n.b) {
    std::swap(n.a, n.b);
    std::swap(n.s1.x, n.s1.y);
    std::swap(n.s2.x, n.s2.y);
  }
  if (std::pair(n.s2.x, n.s2.y) < std::pair(n.s1.x, n.s1.y)) std::swap(n.s1, n.s2);
  return n;
}

const std::vector<NineTuple>& known_anomalous_cases() {
  static const std::vector<NineTuple> cases = {
      {2, 6, 38, {1, 2, 1}, {5, 1, 1}},
      {3, 6, 15, {2, 1, 1}, {2, 3, 2}},
      {6, 15, 231, {1, 2, 1}, {3, 1, 1}},
      {3, 1215, 6, {4, 1, 4}, {8, 1, 5}},
      {3, 6, 7857, {4, 5, 1}, {8, 4, 1}},
      {5, 275, 280, {1, 1, 1}, {7, 1, 2}},
      {5, 280, 78405, {1, 2, 1}, {7, 1, 1}},
      {30, 70, 4930, {1, 2, 1}, {5, 2, 2}},
      {30, 4930, 24304930, {1, 2, 1}, {5, 1, 1}},
      {2, 88, 6, {7, 1, 3}, {5, 2, 5}},
  };
  return cases;
}

bool is_known_anomalous(const NineTuple& nine) {
  for (const auto& k : known_anomalous_cases()) {
    if ((corresponds_to(nine, 0, k, 0) && corresponds_to(nine, 1, k, 1)) ||
        (corresponds_to(nine, 0, k, 1) && corresponds_to(nine, 1, k, 0)))
      return true;
  }
  return false;
}

std::vector<ParamMap> parameter_grid(Family f, unsigned max_bits) {
  std::vector<ParamMap> out;
  const Int limit = Int(1) << max_bits;
  auto fits = [&](const GenResult& r) {
    const auto& n = *r.nine;
    return pow(n.c, n.s1.z) < limit && pow(n.c, n.s2.z) < limit;
  };
  auto divisors = [](unsigned w) {
    std::vector<unsigned> d;
    for (unsigned j = 1; j <= w; ++j)
      if (w % j == 0) d.push_back(j);
    return d;
  };
  // Grow u while every term stays below the limit.
  auto sweep_u = [&](Family fam, ParamMap base) {
    for (unsigned u = 1;; ++u) {
      ParamMap m = base;
      for (auto& [k, v] : m)
        if (k == "u") v = u;
      auto r = gen_family(fam, m);
      if (!r.nine || !fits(r)) break;
      out.push_back(r.params);
    }
  };

  switch (f) {
    case Family::I:
      for (unsigned u = 1; u <= 8; ++u)
        for (unsigned h = 2; h <= 8; ++h) {
          auto r = gen_family(f, {{"u", u}, {"h", h}});
          if (r.nine && fits(r)) out.push_back(r.params);
        }
      break;
    case Family::II:
      for (unsigned t = 1; t <= 8; ++t) {
        auto r = gen_family(f, {{"t", t}});
        if (r.nine && fits(r)) out.push_back(r.params);
      }
      break;
    case Family::III:
      for (unsigned d = 1; d <= 20; ++d)
        for (unsigned k = 2; k <= 8; ++k) {
          Int D = pow(Int(d + 1), k) - pow(Int(d), k);
          for (const auto& [g, w] : power_representations(D)) {
            if (g > 10000) continue;
            for (unsigned j : divisors(w))
              sweep_u(f, {{"g", g}, {"j", j}, {"u", 0}, {"d", d}, {"k", k}, {"w", w}});
          }
        }
      break;
    case Family::IV:
      for (unsigned d = 3; d <= 21; d += 2)
        for (unsigned k = 2; k <= 8; k += 2) {
          Int odd = odd_part(pow(Int(d + 2), k) - pow(Int(d), k));
          if (odd < 3) continue;
          long h = two_adic(Int(2 * d + 2)), v = two_adic(Int(k));
          for (const auto& [g, w] : power_representations(odd)) {
            for (unsigned j : divisors(w)) {
              long num = (h + v - static_cast<long>(k)) * static_cast<long>(j);
              if (num <= 0 || num % w != 0) continue;
              sweep_u(f, {{"g", g}, {"i", num / w}, {"j", j}, {"u", 0}, {"d", d}, {"k", k},
                          {"w", w}});
            }
          }
        }
      break;
  }
  return out;
}

}  // namespace expeq
