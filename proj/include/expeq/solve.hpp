#pragma once

// Bounded enumeration of the solutions of a^x + b^y = c^z and the
// solution-counting conventions built on it.

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "expeq/triple.hpp"

namespace expeq {

inline constexpr unsigned kDefaultMaxBits = 256;

struct Solution {
  unsigned x = 0;
  unsigned y = 0;
  unsigned z = 0;

  bool operator==(const Solution&) const = default;
  auto operator<=>(const Solution&) const = default;
};

// Canonical order: by z, then x, then y.
bool canonical_less(const Solution& l, const Solution& r);

// Exact substitution check a^x + b^y == c^z.
bool satisfies(const Int& a, const Int& b, const Int& c, const Solution& s);
inline bool satisfies(const Triple& t, const Solution& s) {
  return satisfies(t.a(), t.b(), t.c(), s);
}

struct SolutionSet {
  Triple triple;
  std::vector<Solution> solutions;  // canonical order
  unsigned bound_bits = 0;          // complete for c^z < 2^bound_bits
  bool bound_too_small = false;     // c itself is not below the bound
  // Classes of solutions with equal {a^x, b^y}, as indices into `solutions`;
  // each class ascending, classes ordered by their first member.
  std::vector<std::vector<std::size_t>> classes;

  std::size_t raw_count() const { return solutions.size(); }
  // Count where, for a == b only, (x, y, z) and (y, x, z) are merged.
  std::size_t symmetric_count() const;
  std::vector<Solution> representatives() const;
};

// All solutions with c^z < 2^max_bits. workers > 1 splits the z range across
// OpenMP threads; the result is identical for any worker count.
SolutionSet enumerate_solutions(const Triple& t, unsigned max_bits = kDefaultMaxBits,
                                int workers = 1);

// {a1^x1, b1^y1} == {a2^x2, b2^y2} as multisets.
bool correspond(const Int& a1, const Int& b1, const Solution& s1, const Int& a2,
                const Int& b2, const Solution& s2);
inline bool correspond(const Triple& t1, const Solution& s1, const Triple& t2,
                       const Solution& s2) {
  return correspond(t1.a(), t1.b(), s1, t2.a(), t2.b(), s2);
}

// N(a, b, c): number of classes, solutions with equal {a^x, b^y} merged.
std::size_t count_N(const SolutionSet& s);

enum class SpecialCase { none, coprime_352, two_two, two_eight, mersenne, powers_of_two };

std::string to_string(SpecialCase tag);

struct SpecialMatch {
  SpecialCase tag = SpecialCase::none;
  std::vector<std::pair<std::string, std::uint64_t>> params;
  // Solutions predicted for the matched shape (empty for none / powers_of_two).
  std::vector<Solution> predicted;
};

// Matches the triples known to give more than two raw solutions.
SpecialMatch detect_special_case(const Triple& t);

// Solutions of 2^(ux) + 2^(vy) = 2^(wz) for parameters t <= t_max, canonical
// order. Throws ArgumentError unless gcd(uv, w) = 1.
std::vector<Solution> power_of_two_solutions(std::uint64_t u, std::uint64_t v, std::uint64_t w,
                                             std::uint64_t t_max);

}  // namespace expeq
