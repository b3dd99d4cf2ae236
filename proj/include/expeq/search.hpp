#pragma once

// Search for two-solution triples built from pairs of coprime equations
//   g^w1 a1^x1 + b1^y1 = c1^z1   and   a1^x2 + g^w2 b1^y2 = c1^z2.

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "expeq/families.hpp"

namespace expeq {

struct EquationRecord {
  Int A, B, C;  // A + B = C, gcd(A, B) = 1
  Factored fA, fB, fC;

  auto key() const { return std::tie(A, B, C); }
};

EquationRecord make_record(const Int& A, const Int& B, const Int& C);

struct IngestDiagnostic {
  std::size_t line = 0;
  std::string message;
};

struct IngestResult {
  std::vector<EquationRecord> records;
  std::vector<IngestDiagnostic> diagnostics;
  std::size_t rejected = 0;
};

// "A B C" per line, '#' starts a comment.
IngestResult ingest_equations(std::istream& in);

// Every A + B = C with 1 <= A <= B, gcd(A, B) = 1, C <= height_bound and
// rad(ABC) <= rad_bound, ordered by (C, A).
std::vector<EquationRecord> generate_equations(std::uint64_t rad_bound,
                                               std::uint64_t height_bound);

// An exponent on a base of 1 is left free (nullopt).
struct Shape53 {
  Int g;
  unsigned w1 = 0;
  Int a1;
  std::optional<unsigned> x1;
  Int b1;
  std::optional<unsigned> y1;
  Int c1;
  unsigned z1 = 0;

  bool holds() const;
};

struct Shape54 {
  Int a1;
  std::optional<unsigned> x2;
  Int g;
  unsigned w2 = 0;
  Int b1;
  std::optional<unsigned> y2;
  Int c1;
  unsigned z2 = 0;

  bool holds() const;
};

enum class Side { left_carries_g, right_carries_g };

struct Decomposition {
  std::vector<Shape53> s53;  // filled for left_carries_g
  std::vector<Shape54> s54;  // filled for right_carries_g
};

// With left_carries_g, A = g^w1 a1^x1, B = b1^y1; with right_carries_g,
// A = a1^x2, B = g^w2 b1^y2. g is never a perfect power.
Decomposition decompose(const EquationRecord& eq, Side side);

struct SolvedSystem {
  std::uint64_t alpha = 0, beta = 0, gamma = 0;
  // Exponents with free ones fixed.
  std::uint64_t x1 = 0, y1 = 0, z1 = 0, w1 = 0;
  std::uint64_t x2 = 0, y2 = 0, z2 = 0, w2 = 0;

  // y1 beta = z1 gamma, y2 beta - w2 = z2 gamma, x1 alpha - w1 = z1 gamma,
  // x2 alpha = z2 gamma.
  bool consistent() const;
};

enum class PairReason { solved, base_mismatch, unit_pair, mirrored_unit, degenerate,
                        non_integral, inconsistent };
std::string to_string(PairReason r);

struct PairOutcome {
  std::optional<SolvedSystem> system;
  PairReason reason = PairReason::solved;
};

PairOutcome pair_and_solve(const Shape53& s53, const Shape54& s54);

enum class CandidateStatus { anomalous, family_member, wrong_count, type_mismatch,
                             corresponding, bound_exhausted };
std::string to_string(CandidateStatus s);

struct Candidate {
  CandidateStatus status = CandidateStatus::wrong_count;
  NineTuple nine;                    // as reconstructed: s1 Type A, s2 Type B for g
  std::optional<FamilyWitness> witness;
  unsigned bound_bits = 0;
  std::size_t solution_count = 0;
};

// Enumerates with max(max_bits, 2 * bits of the largest c^z) as the bound and
// requires exactly s1, s2, s1 Type A and s2 Type B at every common prime.
Candidate verify_nine(const NineTuple& nine, unsigned max_bits = kDefaultMaxBits);

// (g^alpha a1, g^beta b1, g^gamma c1) with the two derived solutions, then verify_nine.
Candidate reconstruct_and_verify(const Shape53& s53, const Shape54& s54, const SolvedSystem& sys,
                                 unsigned max_bits = kDefaultMaxBits);

struct SearchStats {
  std::uint64_t work_units = 0;
  std::uint64_t shapes = 0;
  std::uint64_t candidates = 0;  // shape pairs examined
  std::uint64_t solved = 0;
  std::uint64_t verified = 0;
  std::uint64_t family = 0;
  std::uint64_t anomalous = 0;
  std::map<std::string, std::uint64_t> rejected;

  void merge(const SearchStats& o);
};

struct SearchReport {
  // Verified candidates (anomalous or family member), one per normalized
  // nine-tuple, ordered by that key.
  std::vector<Candidate> results;
  SearchStats stats;
};

struct DirectBounds {
  std::uint64_t a1_max = 20;
  std::uint64_t g_max = 20;
  std::uint64_t b1_max = 200;
  unsigned exp_max = 6;
};

struct SearchOptions {
  int workers = 1;
  unsigned max_bits = kDefaultMaxBits;
  std::string checkpoint_path;  // empty: no checkpoint
  std::size_t checkpoint_every = 256;
};

SearchReport direct_search(const DirectBounds& bounds, const SearchOptions& opt = {});

// Decomposes every record in both term orders, pairs shapes sharing
// (g, a1, b1, c1), solves and verifies.
SearchReport pipeline_search(const std::vector<EquationRecord>& records,
                             const SearchOptions& opt = {});

// Lexicographic order on (a, b, c, s1, s2); results are deduplicated on
// normalize(nine) under this order.
bool nine_less(const NineTuple& l, const NineTuple& r);

}  // namespace expeq
