#pragma once

// Exact integer primitives: factorization, valuations, perfect powers,
// and the order / lifting-the-exponent oracles used by the classifier.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "expeq/errors.hpp"

namespace expeq {

using Int = mpz_class;

struct PrimePower {
  Int prime;
  unsigned exponent = 0;

  bool operator==(const PrimePower&) const = default;
};

// A positive integer with its complete factorization, primes ascending.
struct Factored {
  Int value;
  std::vector<PrimePower> factors;

  Int recompose() const;
  std::vector<Int> primes() const;
  // Exponent of p in value (0 when p does not divide it).
  unsigned exponent_of(const Int& p) const;
};

// (base, exponent) with base^exponent equal to some n.
struct PowerRep {
  Int base;
  unsigned exponent = 0;
};

Int pow(const Int& base, unsigned long e);
unsigned bit_length(const Int& n);
Int gcd(const Int& a, const Int& b);

bool is_prime(const Int& n);
Factored factorize(const Int& n);

std::vector<Int> prime_set(const Int& n);
Int radical(const Int& n);

// Exact p-adic valuation. Throws ArgumentError for non-prime p or n == 0.
unsigned valuation(const Int& p, const Int& n);

// e >= 1 with base^e == n, if any.
std::optional<unsigned> as_power_of(const Int& base, const Int& n);

// Every representation n = base^k with base >= 2, ordered by ascending k
// (so the first entry is always (n, 1)). Empty for n < 2.
std::vector<PowerRep> power_representations(const Int& n);

// The representation with the largest exponent; base is not a perfect power.
PowerRep primitive_power(const Int& n);

// P(x) is a subset of P(y), decided with gcds only (no factoring).
bool prime_support_subset(const Int& x, const Int& y);

inline constexpr std::uint64_t kDefaultLeastIndexCap = 1'000'000;

enum class IndexStatus { found, never, cap_exhausted };

struct LeastIndex {
  IndexStatus status = IndexStatus::never;
  std::uint64_t index = 0;  // meaningful only when status == found

  bool found() const { return status == IndexStatus::found; }
};

// Least t >= 1 with M | R^t - (-1)^eps S^t.
LeastIndex least_index(const Int& R, const Int& S, const Int& M, int eps,
                       std::uint64_t cap = kDefaultLeastIndexCap);

struct LteOdd {
  unsigned v1 = 0;
  unsigned v2 = 0;
  bool divides = false;
};

// Valuations at an odd prime p of R^n1 - S^n1 and R^n2 - S^n2, and whether
// p^(v2 - v1) divides n2 / n1. `divides` is always true for valid input.
LteOdd lte_odd(const Int& R, const Int& S, const Int& p, unsigned n1,
               unsigned n2);

struct TwoAdicProfile {
  unsigned val_minus = 0;
  unsigned val_plus = 0;

  bool operator==(const TwoAdicProfile&) const = default;
};

// 2-adic valuations of R^n2 - S^n2 and R^n2 + S^n2 for odd coprime R > S,
// extrapolated from the valuations at n1.
TwoAdicProfile two_adic_profile(const Int& R, const Int& S, unsigned n1,
                                unsigned n2);

enum class Sign { minus, plus };

// All n1 < n2 <= n_max with P(R^n2 -+ S^n2) contained in P(R^n1 -+ S^n1).
std::vector<std::pair<unsigned, unsigned>> same_prime_set_scan(
    const Int& R, const Int& S, unsigned n_max, Sign sign);

}  // namespace expeq
