#pragma once

// Per-prime typing of solutions and the reduced equations f(n) = R^n -/+ S^n.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "expeq/solve.hpp"

namespace expeq {

enum class TypeTag { A, B, C, O };

char to_char(TypeTag t);

struct PrimeType {
  Int prime;
  TypeTag tag = TypeTag::O;
  std::uint64_t ax = 0;  // alpha_p * x
  std::uint64_t by = 0;  // beta_p * y
  std::uint64_t cz = 0;  // gamma_p * z
};

struct TypeProfile {
  Solution solution;
  std::vector<PrimeType> primes;  // one per prime of Q, ascending

  TypeTag tag_at(const Int& p) const;
  // The common tag when every prime agrees, otherwise nullopt.
  std::optional<TypeTag> uniform() const;
};

// Throws ArgumentError if Q is empty or s is not a solution, InvariantError
// if the two smallest compared values differ.
TypeProfile type_profile(const Triple& t, const Solution& s);

// Tag for a single comparison triple; throws InvariantError when no two of
// the smallest agree.
TypeTag classify_values(std::uint64_t ax, std::uint64_t by, std::uint64_t cz);

struct ReducedData {
  Int p;
  unsigned n = 0;
  // Type A: beta_p/gamma_p = t/s, y = n s, z = n t.
  // Type C: alpha_p/beta_p = s/r, x = n r, y = n s.
  unsigned r = 0, s = 0, t = 0;
  std::vector<Int> set_a, set_b, set_c;
  Int R, S;
  Int D;         // common factor removed from the two summed terms
  Int f;         // R^n - S^n (type A) or R^n + S^n (type C)
  Int residual;  // right side reconstructed from a1 or c1 and the equal-ratio set
  std::vector<Int> f_primes;
};

// Throws ArgumentError unless s is Type A (resp. C) at p.
ReducedData type_a_data(const Triple& t, const Int& p, const Solution& s);
ReducedData type_c_data(const Triple& t, const Int& p, const Solution& s);

struct DominanceViolation {
  std::size_t solution_index = 0;
  Int p, q;
  TypeTag tag = TypeTag::O;
};

// When p beats q in both alpha/beta and alpha/gamma, every solution must be
// Type A at p. Lists the solutions that are not.
std::vector<DominanceViolation> dominance_screen(const Triple& t,
                                                 std::span<const TypeProfile> profiles);
std::vector<DominanceViolation> dominance_screen(const Triple& t,
                                                 std::span<const Solution> solutions);

// Type-O counts per prime of Q; more than one at a prime throws InvariantError.
std::vector<std::pair<Int, std::size_t>> type_o_census(const Triple& t,
                                                       std::span<const Solution> solutions);

// Shapes allowed when two Type-A solutions share the prime set of f:
// Q = {2}, a1 = 1 and (b1, c1) = (2^(h-1) - 1, 2^(h-1) + 1) with h > 2, (7, 3) or (1, 3).
enum class RigidShape { none, mersenne_pair, seven_three, one_three };
RigidShape f_rigid_shape(const Triple& t);

}  // namespace expeq
