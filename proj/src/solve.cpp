#include "expeq/solve.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace expeq {

namespace {

bool is_power_of_two(const Int& n, unsigned& e) {
  if (n < 1 || mpz_popcount(n.get_mpz_t()) != 1) return false;
  e = static_cast<unsigned>(mpz_scan1(n.get_mpz_t(), 0));
  return true;
}

// n = 2^e * 3 with e >= 1.
bool is_two_power_times_three(const Int& n, unsigned& e) {
  if (n < 6 || mpz_odd_p(n.get_mpz_t())) return false;
  e = static_cast<unsigned>(mpz_scan1(n.get_mpz_t(), 0));
  Int rest;
  mpz_tdiv_q_2exp(rest.get_mpz_t(), n.get_mpz_t(), e);
  return rest == 3;
}

void assign_classes(SolutionSet& set) {
  const Int& a = set.triple.a();
  const Int& c = set.triple.c();
  std::vector<Int> a_terms, b_terms;
  for (const auto& s : set.solutions) {
    a_terms.push_back(pow(a, s.x));
    b_terms.push_back(pow(c, s.z) - a_terms.back());
  }
  std::vector<int> owner(set.solutions.size(), -1);
  for (std::size_t i = 0; i < set.solutions.size(); ++i) {
    if (owner[i] >= 0) continue;
    owner[i] = static_cast<int>(set.classes.size());
    std::vector<std::size_t> members{i};
    for (std::size_t j = i + 1; j < set.solutions.size(); ++j) {
      if (owner[j] >= 0) continue;
      bool same = (a_terms[i] == a_terms[j] && b_terms[i] == b_terms[j]) ||
                  (a_terms[i] == b_terms[j] && b_terms[i] == a_terms[j]);
      if (same) {
        owner[j] = owner[i];
        members.push_back(j);
      }
    }
    set.classes.push_back(std::move(members));
  }
}

}  // namespace

bool canonical_less(const Solution& l, const Solution& r) {
  if (l.z != r.z) return l.z < r.z;
  if (l.x != r.x) return l.x < r.x;
  return l.y < r.y;
}

bool satisfies(const Int& a, const Int& b, const Int& c, const Solution& s) {
  if (s.x == 0 || s.y == 0 || s.z == 0) return false;
  return pow(a, s.x) + pow(b, s.y) == pow(c, s.z);
}

std::size_t SolutionSet::symmetric_count() const {
  if (triple.a() != triple.b()) return solutions.size();
  std::size_t n = 0;
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    const auto& s = solutions[i];
    bool mirrored_earlier = std::any_of(solutions.begin(), solutions.begin() + static_cast<long>(i),
                                        [&](const Solution& e) {
                                          return e.z == s.z && e.x == s.y && e.y == s.x;
                                        });
    if (!mirrored_earlier) ++n;
  }
  return n;
}

std::vector<Solution> SolutionSet::representatives() const {
  std::vector<Solution> out;
  for (const auto& cls : classes) out.push_back(solutions[cls.front()]);
  return out;
}

SolutionSet enumerate_solutions(const Triple& t, unsigned max_bits, int workers) {
  SolutionSet out{t, {}, max_bits, false, {}};
  const Int limit = Int(1) << max_bits;
  if (t.c() >= limit) {
    out.bound_too_small = true;
    return out;
  }
  std::vector<Int> c_powers;
  for (Int p = t.c(); p < limit; p *= t.c()) c_powers.push_back(p);
  std::vector<Int> a_powers;
  for (Int p = t.a(); p < c_powers.back(); p *= t.a()) a_powers.push_back(p);

  const long nz = static_cast<long>(c_powers.size());
  std::vector<std::vector<Solution>> per_z(c_powers.size());
  const Int& b = t.b();
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, workers)) if (workers > 1)
  for (long zi = 0; zi < nz; ++zi) {
    const Int& cz = c_powers[static_cast<std::size_t>(zi)];
    Int rest;
    for (std::size_t xi = 0; xi < a_powers.size() && a_powers[xi] < cz; ++xi) {
      rest = cz - a_powers[xi];
      if (auto y = as_power_of(b, rest))
        per_z[static_cast<std::size_t>(zi)].push_back(
            {static_cast<unsigned>(xi + 1), *y, static_cast<unsigned>(zi + 1)});
    }
  }
  for (auto& chunk : per_z) out.solutions.insert(out.solutions.end(), chunk.begin(), chunk.end());
  assign_classes(out);
  return out;
}

bool correspond(const Int& a1, const Int& b1, const Solution& s1, const Int& a2, const Int& b2,
                const Solution& s2) {
  Int p1 = pow(a1, s1.x), q1 = pow(b1, s1.y);
  Int p2 = pow(a2, s2.x), q2 = pow(b2, s2.y);
  return (p1 == p2 && q1 == q2) || (p1 == q2 && q1 == p2);
}

std::size_t count_N(const SolutionSet& s) { return s.classes.size(); }

std::string to_string(SpecialCase tag) {
  switch (tag) {
    case SpecialCase::none: return "none";
    case SpecialCase::coprime_352: return "coprime-352";
    case SpecialCase::two_two: return "two-two";
    case SpecialCase::two_eight: return "two-eight";
    case SpecialCase::mersenne: return "mersenne";
    case SpecialCase::powers_of_two: return "powers-of-two";
  }
  return "none";
}

SpecialMatch detect_special_case(const Triple& t) {
  const Int &a = t.a(), &b = t.b(), &c = t.c();
  SpecialMatch m;
  if (c == 2 && ((a == 3 && b == 5) || (a == 5 && b == 3))) {
    m.tag = SpecialCase::coprime_352;
    m.predicted = {{1, 1, 3}, {3, 1, 5}, {1, 3, 7}};
    if (a == 5)
      for (auto& s : m.predicted) std::swap(s.x, s.y);
    std::sort(m.predicted.begin(), m.predicted.end(), canonical_less);
    return m;
  }
  unsigned e = 0;
  if (a == 2 && b == 2 && is_two_power_times_three(c, e)) {
    unsigned g = e;
    m.tag = SpecialCase::two_two;
    m.params = {{"gamma", g}};
    m.predicted = {{g + 1, g, 1}, {g, g + 1, 1}, {2 * g + 3, 2 * g, 2}, {2 * g, 2 * g + 3, 2}};
    std::sort(m.predicted.begin(), m.predicted.end(), canonical_less);
    return m;
  }
  if (((a == 2 && b == 8) || (a == 8 && b == 2)) && is_two_power_times_three(c, e) && e % 3 == 0) {
    unsigned s = e / 3;
    m.tag = SpecialCase::two_eight;
    m.params = {{"t", s}};
    m.predicted = {{3 * s + 1, s, 1}, {6 * s + 3, 2 * s, 2}, {6 * s, 2 * s + 1, 2}};
    if (a == 8)
      for (auto& sol : m.predicted) std::swap(sol.x, sol.y);
    std::sort(m.predicted.begin(), m.predicted.end(), canonical_less);
    return m;
  }
  unsigned k = 0;
  if (a == b && is_power_of_two(a + 1, k) && k >= 2 && mpz_even_p(c.get_mpz_t())) {
    if (auto g = as_power_of(a, c / 2)) {
      m.tag = SpecialCase::mersenne;
      m.params = {{"k", k}, {"gamma", *g}};
      m.predicted = {{*g, *g, 1}, {k * *g + 1, k * *g, k}, {k * *g, k * *g + 1, k}};
      std::sort(m.predicted.begin(), m.predicted.end(), canonical_less);
      return m;
    }
  }
  unsigned u = 0, v = 0, w = 0;
  if (is_power_of_two(a, u) && is_power_of_two(b, v) && is_power_of_two(c, w) &&
      std::gcd(std::uint64_t{u} * v, std::uint64_t{w}) == 1) {
    m.tag = SpecialCase::powers_of_two;
    m.params = {{"u", u}, {"v", v}, {"w", w}};
    return m;
  }
  return m;
}

std::vector<Solution> power_of_two_solutions(std::uint64_t u, std::uint64_t v, std::uint64_t w,
                                             std::uint64_t t_max) {
  if (u == 0 || v == 0 || w == 0) throw ArgumentError("power_of_two_solutions: u, v, w must be positive");
  if (std::gcd(u * v, w) != 1) throw ArgumentError("power_of_two_solutions: require gcd(uv, w) = 1");
  const std::uint64_t g = std::gcd(u, v);
  const std::uint64_t L = std::lcm(u, v);
  std::vector<Solution> out;
  for (std::uint64_t t = 1; t <= t_max; ++t) {
    if ((t * L + 1) % w != 0) continue;
    Solution s{static_cast<unsigned>(t * v / g), static_cast<unsigned>(t * u / g),
               static_cast<unsigned>((t * L + 1) / w)};
    if (!satisfies(Int(1) << u, Int(1) << v, Int(1) << w, s))
      throw InvariantError("power_of_two_solutions: substitution failed");
    out.push_back(s);
  }
  return out;
}

}  // namespace expeq
