#pragma once

// The four infinite families of two-solution nine-tuples, exact and
// correspondence-based membership, and anomalous classification.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "expeq/solve.hpp"

namespace expeq {

enum class Family { I, II, III, IV };

std::string to_string(Family f);
std::optional<Family> parse_family(const std::string& s);

// Parameters in the family's canonical order:
// I: u h; II: t; III: g j u d k w; IV: g i j u d k w h v.
using ParamMap = std::vector<std::pair<std::string, Int>>;

std::optional<Int> param(const ParamMap& m, const std::string& name);
std::string format_params(const ParamMap& m);

struct NineTuple {
  Int a, b, c;
  Solution s1, s2;

  bool operator==(const NineTuple&) const = default;
  std::string str() const;
};

struct GenResult {
  std::optional<NineTuple> nine;
  ParamMap params;  // completed (derived w, h, v filled in)
  std::vector<std::string> violations;
};

// Omitted w (III, IV) and h, v (IV) are derived; supplied ones are checked.
GenResult gen_family(Family f, const ParamMap& params);

struct FamilyWitness {
  Family family = Family::I;
  ParamMap params;
  NineTuple member;
  // matching[j]: index (0 or 1) of the input solution corresponding to the
  // member's solution j.
  std::array<int, 2> matching{0, 1};
};

// Strict weak order: family, then parameter values in canonical order.
bool witness_less(const FamilyWitness& l, const FamilyWitness& r);

// Every family/parameter choice whose generated nine-tuple equals `nine`
// verbatim, sorted by witness_less.
std::vector<FamilyWitness> all_F_witnesses(const NineTuple& nine);
std::optional<FamilyWitness> in_F(const NineTuple& nine);

enum class MembershipStatus { member, absent, bound_exhausted };
std::string to_string(MembershipStatus s);

struct Membership {
  MembershipStatus status = MembershipStatus::absent;
  std::optional<FamilyWitness> witness;
  unsigned bound_bits = 0;
};

// Budget 0 means the default: twice the bit length of the largest of
// a^x1, b^y1, a^x2, b^y2.
Membership in_family(const NineTuple& nine, unsigned budget_bits = 0);

// Throws ArgumentError when gcd(a, b) = 1, when either solution fails, when
// they coincide, or when they correspond. absent means anomalous.
Membership classify_nine(const NineTuple& nine, unsigned budget_bits = 0);

// Perfect-power bases reduced, a <= b, solutions ordered by (x, y).
NineTuple normalize(const NineTuple& nine);

const std::vector<NineTuple>& known_anomalous_cases();
// The two solutions correspond, in some pairing, to those of a listed case.
bool is_known_anomalous(const NineTuple& nine);

// Every valid parameter map of the family with all six terms below 2^max_bits,
// using the bounded ranges I: u, h <= 8; II: t <= 8; III: d <= 20, 2 <= k <= 8,
// g <= 10^4; IV: odd 3 <= d <= 21, even k <= 8.
std::vector<ParamMap> parameter_grid(Family f, unsigned max_bits = 128);

}  // namespace expeq
