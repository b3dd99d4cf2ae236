#pragma once

// Slow, obviously-correct serial versions of the library kernels. Used as
// differential oracles by the tests and as baselines by the benchmark.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "expeq/search.hpp"

namespace expeq::ref {

using u64 = std::uint64_t;

// Double loop over (x, y); keeps pairs whose sum is a power of c below 2^max_bits.
std::vector<Solution> enumerate(const Int& a, const Int& b, const Int& c, unsigned max_bits);

unsigned valuation(u64 p, const Int& n);

// Trial division only.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

// Direct loop t = 1..cap over R^t -/+ S^t mod M.
std::optional<u64> least_index(u64 R, u64 S, u64 M, int eps, u64 cap);


// Brute-force gamma in [1, gamma_max] for the linear system of a shape pair.
std::optional<SolvedSystem> solve_pair(const Shape53& s53, const Shape54& s54,
                                       u64 gamma_max = 4096);

// Serial, all-mpz direct search with no residue filter and a quadratic join.
std::vector<Candidate> direct_search(const DirectBounds& b, unsigned max_bits = kDefaultMaxBits);

}  // namespace expeq::ref
