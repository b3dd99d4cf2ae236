#pragma once

// A base triple (a, b, c) together with its common-prime structure.

#include <span>
#include <vector>

#include "expeq/arith.hpp"

namespace expeq {

// Exponents of one prime of Q in a, b and c.
struct CommonPrime {
  Int prime;
  unsigned alpha = 0;
  unsigned beta = 0;
  unsigned gamma = 0;
};

class Triple {
 public:
  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  const Int& c() const { return c_; }
  const Factored& fa() const { return fa_; }
  const Factored& fb() const { return fb_; }
  const Factored& fc() const { return fc_; }

  // Primes dividing all of a, b, c, ascending.
  const std::vector<CommonPrime>& common() const { return common_; }
  std::vector<Int> q_primes() const;
  const CommonPrime& exponents(const Int& p) const;
  bool in_q(const Int& p) const;

  // Largest divisors of a, b, c free of Q-primes.
  const Int& a1() const { return a1_; }
  const Int& b1() const { return b1_; }
  const Int& c1() const { return c1_; }

  Int gcd_ab() const { return gcd(a_, b_); }

 private:
  friend Triple build_triple(const Int& a, const Int& b, const Int& c);

  Int a_, b_, c_;
  Factored fa_, fb_, fc_;
  std::vector<CommonPrime> common_;
  Int a1_, b1_, c1_;
};

// Rejects any of a, b, c below 2.
Triple build_triple(const Int& a, const Int& b, const Int& c);

// A subset Q1 of Q whose exponent vectors are proportional, bundled into a
// single base g with a = a1 * g^alpha_g * (residual primes), likewise b, c.
struct GDecomposition {
  std::vector<Int> class_primes;   // Q1, ascending
  std::vector<unsigned> weights;   // t_i with gcd 1, g = prod q_i^t_i
  Int g;
  unsigned alpha_g = 0;
  unsigned beta_g = 0;
  unsigned gamma_g = 0;
  std::vector<CommonPrime> residual;  // Q \ Q1

  // prod over the residual primes of q^alpha_q (resp. beta, gamma).
  Int residual_part_a() const;
  Int residual_part_b() const;
  Int residual_part_c() const;
};

class ProportionalityError : public ArgumentError {
 public:
  ProportionalityError(Int p, Int q);
  const Int& first() const { return first_; }
  const Int& second() const { return second_; }

 private:
  Int first_, second_;
};

// Throws ProportionalityError naming the offending pair, ArgumentError for an
// empty subset or primes outside Q.
GDecomposition g_decomposition(const Triple& t, std::span<const Int> q1);

// Exponent vectors (alpha, beta, gamma) of p and q are proportional.
bool proportional(const CommonPrime& p, const CommonPrime& q);

// Partition of Q into maximal proportional classes, ordered by least prime.
std::vector<std::vector<Int>> maximal_proportional_classes(const Triple& t);

}  // namespace expeq
