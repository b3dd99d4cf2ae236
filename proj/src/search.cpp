#include "expeq/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "expeq/classify.hpp"

namespace expeq {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kMaxDerivedExponent = 1u << 16;

Int to_int(u128 v) {
  Int hi = static_cast<u64>(v >> 64), lo = static_cast<u64>(v);
  return (hi << 64) + lo;
}

// k-th power residue tables over small moduli; rejects almost every
// non-power before a root is attempted.
class ResidueFilter {
 public:
  static constexpr u64 kM1 = 64ull * 63 * 65 * 11 * 17 * 19;
  static constexpr u64 kM2 = 13ull * 31 * 37 * 41 * 43 * 61 * 73 * 97;

  explicit ResidueFilter(unsigned max_k) : tests_(max_k + 1) {
    const std::pair<u64, bool> moduli[] = {{64, false}, {63, false}, {65, false}, {11, false},
                                           {17, false}, {19, false}, {13, true},  {31, true},
                                           {37, true},  {41, true},  {43, true},  {61, true},
                                           {73, true},  {97, true}};
    for (unsigned k = 2; k <= max_k; ++k)
      for (auto [m, second] : moduli) {
        std::vector<char> ok(m, 0);
        for (u64 x = 0; x < m; ++x) {
          u64 r = 1;
          for (unsigned i = 0; i < k; ++i) r = r * x % m;
          ok[r] = 1;
        }
        auto hits = std::count(ok.begin(), ok.end(), 1);
        if (static_cast<double>(hits) < 0.7 * static_cast<double>(m))
          tests_[k].push_back({m, second, std::move(ok)});
      }
  }

  bool may_be_power(u64 r1, u64 r2, unsigned k) const {
    for (const auto& t : tests_[k])
      if (!t.ok[(t.second ? r2 : r1) % t.m]) return false;
    return true;
  }

 private:
  struct Test {
    u64 m;
    bool second;
    std::vector<char> ok;
  };
  std::vector<std::vector<Test>> tests_;
};

// Arithmetic used by a direct-search cell; u128 when the cell's values fit.
struct WideOps {
  using N = u128;

  static N from(const Int& v) {
    return (u128(Int(v >> 64).get_ui()) << 64) | Int(v & ((Int(1) << 64) - 1)).get_ui();
  }
  static Int to(const N& v) { return to_int(v); }

  static bool pow_equals(u128 b, unsigned k, u128 v) {
    u128 r = 1;
    for (unsigned i = 0; i < k; ++i)
      if (__builtin_mul_overflow(r, b, &r)) return false;
    return r == v;
  }

  static std::optional<N> root(const N& v, unsigned k) {
    auto est = static_cast<u64>(std::pow(static_cast<long double>(v), 1.0L / k));
    for (u64 c = est > 2 ? est - 2 : 0; c <= est + 2; ++c)
      if (pow_equals(c, k, v)) return c;
    return std::nullopt;
  }

  struct Residues {
    u64 r1, r2;
  };
  static Residues residues(const N& v) {
    return {static_cast<u64>(v % ResidueFilter::kM1), static_cast<u64>(v % ResidueFilter::kM2)};
  }
};

struct BigOps {
  using N = Int;
  static N from(const Int& v) { return v; }
  static Int to(const N& v) { return v; }
  static std::optional<N> root(const N& v, unsigned k) {
    Int r;
    if (mpz_root(r.get_mpz_t(), v.get_mpz_t(), k) != 0) return r;
    return std::nullopt;
  }

  struct Residues {
    u64 r1, r2;
  };
  static Residues residues(const N& v) {
    return {mpz_fdiv_ui(v.get_mpz_t(), ResidueFilter::kM1),
            mpz_fdiv_ui(v.get_mpz_t(), ResidueFilter::kM2)};
  }
};

template <class N>
struct Entry {
  N c;
  unsigned z, w, x, y;
};

template <class Ops>
void add_reps(const typename Ops::N& v, unsigned E, unsigned w, unsigned x, unsigned y,
              const ResidueFilter& filter, std::vector<Entry<typename Ops::N>>& out) {
  out.push_back({v, 1, w, x, y});
  if (E < 2) return;
  const auto res = Ops::residues(v);
  for (unsigned k = 2; k <= E; ++k) {
    if (!filter.may_be_power(res.r1, res.r2, k)) continue;
    if (auto r = Ops::root(v, k); r && *r >= 2) out.push_back({*r, k, w, x, y});
  }
}

struct UnitOut {
  std::vector<Candidate> found;
  SearchStats stats;
};

void record_pair(const Shape53& s53, const Shape54& s54, unsigned max_bits, UnitOut& out) {
  ++out.stats.candidates;
  auto po = pair_and_solve(s53, s54);
  if (!po.system) {
    ++out.stats.rejected[to_string(po.reason)];
    return;
  }
  ++out.stats.solved;
  auto cand = reconstruct_and_verify(s53, s54, *po.system, max_bits);
  switch (cand.status) {
    case CandidateStatus::anomalous:
      ++out.stats.verified;
      ++out.stats.anomalous;
      out.found.push_back(std::move(cand));
      break;
    case CandidateStatus::family_member:
      ++out.stats.verified;
      ++out.stats.family;
      out.found.push_back(std::move(cand));
      break;
    default:
      ++out.stats.rejected[to_string(cand.status)];
  }
}

template <class Ops>
void run_cell(const Int& g, const Int& a1, const Int& b1, unsigned E, unsigned max_bits,
              const ResidueFilter& filter, UnitOut& out) {
  using N = typename Ops::N;
  std::vector<N> gw(E + 1), aw(E + 1), bw(E + 1);
  for (unsigned k = 0; k <= E; ++k) {
    gw[k] = Ops::from(pow(g, k));
    aw[k] = Ops::from(pow(a1, k));
    bw[k] = Ops::from(pow(b1, k));
  }
  const bool a_unit = a1 == 1;
  const unsigned xmax = a_unit ? 1 : E;
  std::vector<Entry<N>> left, right;
  for (unsigned w = 1; w <= E; ++w)
    for (unsigned x = 1; x <= xmax; ++x)
      for (unsigned y = 1; y <= E; ++y) {
        add_reps<Ops>(N(gw[w] * aw[x] + bw[y]), E, w, x, y, filter, left);
        add_reps<Ops>(N(aw[x] + gw[w] * bw[y]), E, w, x, y, filter, right);
      }
  out.stats.shapes += left.size() + right.size();
  auto by_c = [](const Entry<N>& l, const Entry<N>& r) { return l.c < r.c; };
  std::stable_sort(left.begin(), left.end(), by_c);
  std::stable_sort(right.begin(), right.end(), by_c);

  auto li = left.begin();
  auto ri = right.begin();
  while (li != left.end() && ri != right.end()) {
    if (li->c < ri->c) {
      ++li;
    } else if (ri->c < li->c) {
      ++ri;
    } else {
      auto lend = li, rend = ri;
      while (lend != left.end() && lend->c == li->c) ++lend;
      while (rend != right.end() && rend->c == ri->c) ++rend;
      const Int c1 = Ops::to(li->c);
      for (auto l = li; l != lend; ++l) {
        Shape53 s53{g, l->w, a1, a_unit ? std::nullopt : std::optional<unsigned>(l->x), b1, l->y,
                    c1, l->z};
        for (auto r = ri; r != rend; ++r) {
          Shape54 s54{a1, a_unit ? std::nullopt : std::optional<unsigned>(r->x), g, r->w, b1,
                      r->y, c1, r->z};
          record_pair(s53, s54, max_bits, out);
        }
      }
      li = lend;
      ri = rend;
    }
  }
}

bool is_perfect_power(const Int& n) { return mpz_perfect_power_p(n.get_mpz_t()) != 0; }

void merge_found(std::vector<Candidate>& found, std::vector<std::pair<NineTuple, Candidate>>& keyed) {
  for (auto& c : found) keyed.push_back({normalize(c.nine), std::move(c)});
}

std::vector<Candidate> dedup(std::vector<std::pair<NineTuple, Candidate>> keyed) {
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& l, const auto& r) { return nine_less(l.first, r.first); });
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i > 0 && !nine_less(keyed[i - 1].first, keyed[i].first)) continue;
    out.push_back(std::move(keyed[i].second));
  }
  return out;
}

nlohmann::json stats_to_json(const SearchStats& s) {
  return {{"work_units", s.work_units}, {"shapes", s.shapes},     {"candidates", s.candidates},
          {"solved", s.solved},         {"verified", s.verified}, {"family", s.family},
          {"anomalous", s.anomalous},   {"rejected", s.rejected}};
}

SearchStats stats_from_json(const nlohmann::json& j) {
  SearchStats s;
  s.work_units = j.at("work_units");
  s.shapes = j.at("shapes");
  s.candidates = j.at("candidates");
  s.solved = j.at("solved");
  s.verified = j.at("verified");
  s.family = j.at("family");
  s.anomalous = j.at("anomalous");
  s.rejected = j.at("rejected").get<std::map<std::string, u64>>();
  return s;
}

nlohmann::json nine_to_json(const NineTuple& n) {
  return {n.a.get_str(), n.b.get_str(), n.c.get_str(), n.s1.x, n.s1.y, n.s1.z,
          n.s2.x,        n.s2.y,        n.s2.z};
}

NineTuple nine_from_json(const nlohmann::json& j) {
  return {Int(j.at(0).get<std::string>()), Int(j.at(1).get<std::string>()),
          Int(j.at(2).get<std::string>()),
          {j.at(3), j.at(4), j.at(5)},
          {j.at(6), j.at(7), j.at(8)}};
}

}  // namespace

EquationRecord make_record(const Int& A, const Int& B, const Int& C) {
  if (A < 1 || B < 1) throw ArgumentError("terms must be positive");
  if (A + B != C)
    throw ArgumentError(A.get_str() + " + " + B.get_str() + " != " + C.get_str());
  if (gcd(A, B) != 1) throw ArgumentError("gcd(A, B) = " + gcd(A, B).get_str());
  return {A, B, C, factorize(A), factorize(B), factorize(C)};
}

IngestResult ingest_equations(std::istream& in) {
  IngestResult out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto reject = [&](const std::string& msg) {
      out.diagnostics.push_back({lineno, msg});
      ++out.rejected;
    };
    if (tok.size() != 3) {
      reject("expected 3 fields, got " + std::to_string(tok.size()));
      continue;
    }
    bool numeric = std::all_of(tok.begin(), tok.end(), [](const std::string& t) {
      return std::all_of(t.begin(), t.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
    });
    if (!numeric) {
      reject("non-decimal field");
      continue;
    }
    try {
      out.records.push_back(make_record(Int(tok[0]), Int(tok[1]), Int(tok[2])));
    } catch (const ArgumentError& e) {
      reject(e.what());
    }
  }
  return out;
}

std::vector<EquationRecord> generate_equations(u64 rad_bound, u64 height_bound) {
  if (rad_bound < 6) throw ArgumentError("rad_bound must be >= 6");
  const u64 H = height_bound;
  std::vector<u64> rad(H + 1, 1);
  std::vector<bool> composite(H + 1, false);
  for (u64 p = 2; p <= H; ++p) {
    if (composite[p]) continue;
    for (u64 m = p; m <= H; m += p) {
      if (m > p) composite[m] = true;
      rad[m] *= p;
    }
  }
  std::vector<u64> smooth;
  for (u64 n = 1; n <= H; ++n)
    if (rad[n] <= rad_bound) smooth.push_back(n);

  std::vector<EquationRecord> out;
  for (u64 C : smooth) {
    if (C < 2) continue;
    for (u64 A : smooth) {
      if (2 * A > C) break;
      if (rad[A] * rad[C] > rad_bound) continue;
      u64 B = C - A;
      if (std::gcd(A, B) != 1) continue;
      if (rad[B] > rad_bound / (rad[A] * rad[C])) continue;
      out.push_back(make_record(Int(A), Int(B), Int(C)));
    }
  }
  return out;
}

bool Shape53::holds() const {
  Int lhs = pow(g, w1) * (x1 ? pow(a1, *x1) : Int(1)) + (y1 ? pow(b1, *y1) : Int(1));
  return (a1 == 1 || x1) && (b1 == 1 || y1) && lhs == pow(c1, z1);
}

bool Shape54::holds() const {
  Int lhs = (x2 ? pow(a1, *x2) : Int(1)) + pow(g, w2) * (y2 ? pow(b1, *y2) : Int(1));
  return (a1 == 1 || x2) && (b1 == 1 || y2) && lhs == pow(c1, z2);
}

Decomposition decompose(const EquationRecord& eq, Side side) {
  Decomposition out;
  const bool left = side == Side::left_carries_g;
  const Factored& carrier = left ? eq.fA : eq.fB;
  const Int& pure = left ? eq.B : eq.A;
  if (carrier.value < 2) return out;

  auto reps_or_unit = [](const Int& v) {
    std::vector<std::pair<Int, std::optional<unsigned>>> r;
    if (v == 1) {
      r.push_back({Int(1), std::nullopt});
    } else {
      for (const auto& pr : power_representations(v)) r.push_back({pr.base, pr.exponent});
    }
    return r;
  };
  const auto pure_reps = reps_or_unit(pure);
  const auto c_reps = power_representations(eq.C);

  const auto& f = carrier.factors;
  const std::size_t n = f.size();
  for (u64 mask = 1; mask < (u64{1} << n); ++mask) {
    unsigned w = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) w = std::gcd(w, f[i].exponent);
    Int g = 1, G = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) {
        g *= pow(f[i].prime, f[i].exponent / w);
        G *= pow(f[i].prime, f[i].exponent);
      }
    const auto rest_reps = reps_or_unit(carrier.value / G);
    for (const auto& [r, re] : rest_reps)
      for (const auto& [p, pe] : pure_reps)
        for (const auto& cr : c_reps) {
          if (left)
            out.s53.push_back({g, w, r, re, p, pe, cr.base, cr.exponent});
          else
            out.s54.push_back({p, pe, g, w, r, re, cr.base, cr.exponent});
        }
  }
  return out;
}

bool SolvedSystem::consistent() const {
  return y1 * beta == z1 * gamma && y2 * beta == z2 * gamma + w2 &&
         x1 * alpha == z1 * gamma + w1 && x2 * alpha == z2 * gamma;
}

std::string to_string(PairReason r) {
  switch (r) {
    case PairReason::solved: return "solved";
    case PairReason::base_mismatch: return "base_mismatch";
    case PairReason::unit_pair: return "unit_pair";
    case PairReason::mirrored_unit: return "mirrored_unit";
    case PairReason::degenerate: return "degenerate";
    case PairReason::non_integral: return "non_integral";
    case PairReason::inconsistent: return "inconsistent";
  }
  return "?";
}

PairOutcome pair_and_solve(const Shape53& s53, const Shape54& s54) {
  if (s53.g != s54.g || s53.a1 != s54.a1 || s53.b1 != s54.b1 || s53.c1 != s54.c1)
    return {std::nullopt, PairReason::base_mismatch};
  if (s53.a1 == 1 && s53.b1 == 1) return {std::nullopt, PairReason::unit_pair};
  if (s53.b1 == 1) return {std::nullopt, PairReason::mirrored_unit};
  if (!s53.y1 || !s54.y2) throw ArgumentError("pair_and_solve: y exponents missing");

  using i64 = std::int64_t;
  const i64 y1 = *s53.y1, z1 = s53.z1, w1 = s53.w1;
  const i64 y2 = *s54.y2, z2 = s54.z2, w2 = s54.w2;
  const i64 den1 = y2 * z1 - z2 * y1, num1 = w2 * y1;
  if (den1 <= 0) return {std::nullopt, PairReason::degenerate};

  SolvedSystem sys;
  sys.y1 = static_cast<u64>(y1);
  sys.z1 = static_cast<u64>(z1);
  sys.w1 = static_cast<u64>(w1);
  sys.y2 = static_cast<u64>(y2);
  sys.z2 = static_cast<u64>(z2);
  sys.w2 = static_cast<u64>(w2);

  if (s53.a1 == 1) {
    if (num1 % den1 != 0) return {std::nullopt, PairReason::non_integral};
    const i64 gamma = num1 / den1;
    if ((z1 * gamma) % y1 != 0) return {std::nullopt, PairReason::non_integral};
    sys.gamma = static_cast<u64>(gamma);
    sys.beta = static_cast<u64>(z1 * gamma / y1);
    sys.alpha = 1;
    sys.x1 = static_cast<u64>(z1 * gamma + w1);
    sys.x2 = static_cast<u64>(z2 * gamma);
  } else {
    if (!s53.x1 || !s54.x2) throw ArgumentError("pair_and_solve: x exponents missing");
    const i64 x1 = *s53.x1, x2 = *s54.x2;
    const i64 den2 = x1 * z2 - z1 * x2, num2 = w1 * x2;
    if (den2 <= 0) return {std::nullopt, PairReason::degenerate};
    if (num1 * den2 != num2 * den1) return {std::nullopt, PairReason::inconsistent};
    if (num1 % den1 != 0) return {std::nullopt, PairReason::non_integral};
    const i64 gamma = num1 / den1;
    if ((z1 * gamma) % y1 != 0 || (z2 * gamma) % x2 != 0)
      return {std::nullopt, PairReason::non_integral};
    sys.gamma = static_cast<u64>(gamma);
    sys.beta = static_cast<u64>(z1 * gamma / y1);
    sys.alpha = static_cast<u64>(z2 * gamma / x2);
    sys.x1 = static_cast<u64>(x1);
    sys.x2 = static_cast<u64>(x2);
  }
  if (!sys.consistent()) throw InvariantError("solved system fails its own relations");
  return {sys, PairReason::solved};
}

std::string to_string(CandidateStatus s) {
  switch (s) {
    case CandidateStatus::anomalous: return "anomalous";
    case CandidateStatus::family_member: return "family";
    case CandidateStatus::wrong_count: return "wrong_count";
    case CandidateStatus::type_mismatch: return "type_mismatch";
    case CandidateStatus::corresponding: return "corresponding";
    case CandidateStatus::bound_exhausted: return "bound_exhausted";
  }
  return "?";
}

Candidate verify_nine(const NineTuple& nine, unsigned max_bits) {
  Candidate out;
  out.nine = nine;
  if (!satisfies(nine.a, nine.b, nine.c, nine.s1) || !satisfies(nine.a, nine.b, nine.c, nine.s2))
    throw ArgumentError("verify_nine: not a pair of solutions: " + nine.str());
  unsigned top = bit_length(pow(nine.c, std::max(nine.s1.z, nine.s2.z)));
  out.bound_bits = std::max(max_bits, 2 * top);
  auto triple = build_triple(nine.a, nine.b, nine.c);
  auto set = enumerate_solutions(triple, out.bound_bits);
  out.solution_count = set.raw_count();
  if (set.bound_too_small) {
    out.status = CandidateStatus::bound_exhausted;
    return out;
  }
  if (set.raw_count() != 2 || nine.s1 == nine.s2) {
    out.status = CandidateStatus::wrong_count;
    return out;
  }
  if (correspond(nine.a, nine.b, nine.s1, nine.a, nine.b, nine.s2)) {
    out.status = CandidateStatus::corresponding;
    return out;
  }
  if (triple.common().empty() || type_profile(triple, nine.s1).uniform() != TypeTag::A ||
      type_profile(triple, nine.s2).uniform() != TypeTag::B) {
    out.status = CandidateStatus::type_mismatch;
    return out;
  }
  auto m = classify_nine(nine);
  out.witness = m.witness;
  switch (m.status) {
    case MembershipStatus::member: out.status = CandidateStatus::family_member; break;
    case MembershipStatus::absent: out.status = CandidateStatus::anomalous; break;
    case MembershipStatus::bound_exhausted: out.status = CandidateStatus::bound_exhausted; break;
  }
  return out;
}

Candidate reconstruct_and_verify(const Shape53& s53, const Shape54& s54, const SolvedSystem& sys,
                                 unsigned max_bits) {
  if (!sys.consistent()) throw ArgumentError("reconstruct_and_verify: inconsistent system");
  Candidate out;
  for (u64 e : {sys.alpha, sys.beta, sys.gamma, sys.x1, sys.x2, sys.y1, sys.y2, sys.z1, sys.z2})
    if (e == 0 || e > kMaxDerivedExponent) {
      out.status = CandidateStatus::bound_exhausted;
      return out;
    }
  const Int& g = s53.g;
  NineTuple nine{pow(g, sys.alpha) * s53.a1, pow(g, sys.beta) * s53.b1,
                 pow(g, sys.gamma) * s53.c1,
                 {static_cast<unsigned>(sys.x1), static_cast<unsigned>(sys.y1),
                  static_cast<unsigned>(sys.z1)},
                 {static_cast<unsigned>(sys.x2), static_cast<unsigned>(sys.y2),
                  static_cast<unsigned>(sys.z2)}};
  if (!satisfies(nine.a, nine.b, nine.c, nine.s1) || !satisfies(nine.a, nine.b, nine.c, nine.s2))
    throw InvariantError("reconstructed triple fails its derived solutions: " + nine.str());
  (void)s54;
  return verify_nine(nine, max_bits);
}

void SearchStats::merge(const SearchStats& o) {
  work_units += o.work_units;
  shapes += o.shapes;
  candidates += o.candidates;
  solved += o.solved;
  verified += o.verified;
  family += o.family;
  anomalous += o.anomalous;
  for (const auto& [k, v] : o.rejected) rejected[k] += v;
}

bool nine_less(const NineTuple& l, const NineTuple& r) {
  if (l.a != r.a) return l.a < r.a;
  if (l.b != r.b) return l.b < r.b;
  if (l.c != r.c) return l.c < r.c;
  if (l.s1 != r.s1) return l.s1 < r.s1;
  return l.s2 < r.s2;
}

SearchReport direct_search(const DirectBounds& bounds, const SearchOptions& opt) {
  if (bounds.exp_max == 0 || bounds.a1_max == 0 || bounds.g_max < 2 || bounds.b1_max == 0)
    throw ArgumentError("direct_search: bounds must be positive (g_max >= 2)");
  struct Unit {
    Int g, a1;
  };
  std::vector<Unit> units;
  for (u64 g = 2; g <= bounds.g_max; ++g) {
    if (is_perfect_power(Int(g))) continue;
    for (u64 a1 = 1; a1 <= bounds.a1_max; ++a1)
      if (std::gcd(g, a1) == 1) units.push_back({Int(g), Int(a1)});
  }

  const nlohmann::json config = {bounds.a1_max, bounds.g_max, bounds.b1_max, bounds.exp_max,
                                 opt.max_bits};
  std::vector<std::pair<NineTuple, Candidate>> keyed;
  SearchStats stats;
  std::size_t next = 0;
  if (!opt.checkpoint_path.empty()) {
    std::ifstream in(opt.checkpoint_path);
    if (in) {
      auto j = nlohmann::json::parse(in);
      if (j.at("config") != config)
        throw ArgumentError("checkpoint " + opt.checkpoint_path + " was written for other bounds");
      next = j.at("next_unit");
      stats = stats_from_json(j.at("stats"));
      for (const auto& n : j.at("found")) {
        auto c = verify_nine(nine_from_json(n), opt.max_bits);
        keyed.push_back({normalize(c.nine), std::move(c)});
      }
    }
  }

  const unsigned E = bounds.exp_max;
  const ResidueFilter filter(E);
  const std::size_t block = opt.checkpoint_path.empty() ? units.size() : std::max<std::size_t>(1, opt.checkpoint_every);
  while (next < units.size()) {
    const std::size_t end = std::min(units.size(), next + block);
    std::vector<UnitOut> outs(end - next);
    const long count = static_cast<long>(end - next);
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, opt.workers)) if (opt.workers > 1)
    for (long i = 0; i < count; ++i) {
      const auto& u = units[next + static_cast<std::size_t>(i)];
      auto& out = outs[static_cast<std::size_t>(i)];
      out.stats.work_units = 1;
      const u64 gb = bit_length(u.g), ab = bit_length(u.a1);
      for (u64 b = 2; b <= bounds.b1_max; ++b) {
        Int b1(b);
        if (gcd(b1, u.g) != 1 || gcd(b1, u.a1) != 1) continue;
        const u64 need = (gb + ab + bit_length(b1)) * E + 2;
        if (need <= 124)
          run_cell<WideOps>(u.g, u.a1, b1, E, opt.max_bits, filter, out);
        else
          run_cell<BigOps>(u.g, u.a1, b1, E, opt.max_bits, filter, out);
      }
    }
    for (auto& o : outs) {
      stats.merge(o.stats);
      merge_found(o.found, keyed);
    }
    next = end;
    if (!opt.checkpoint_path.empty()) {
      nlohmann::json found = nlohmann::json::array();
      for (const auto& [k, c] : keyed) found.push_back(nine_to_json(c.nine));
      nlohmann::json j = {{"config", config},
                          {"next_unit", next},
                          {"stats", stats_to_json(stats)},
                          {"found", found}};
      std::string tmp = opt.checkpoint_path + ".tmp";
      {
        std::ofstream o(tmp);
        o << j.dump() << '\n';
      }
      std::rename(tmp.c_str(), opt.checkpoint_path.c_str());
    }
  }
  return {dedup(std::move(keyed)), stats};
}

SearchReport pipeline_search(const std::vector<EquationRecord>& records, const SearchOptions& opt) {
  using Key = std::tuple<Int, Int, Int, Int>;
  std::map<Key, std::pair<std::vector<Shape53>, std::vector<Shape54>>> groups;
  SearchStats stats;
  for (const auto& rec : records) {
    std::vector<EquationRecord> orders{rec};
    if (rec.A != rec.B) orders.push_back({rec.B, rec.A, rec.C, rec.fB, rec.fA, rec.fC});
    for (const auto& r : orders) {
      for (auto& s : decompose(r, Side::left_carries_g).s53) {
        ++stats.shapes;
        groups[{s.g, s.a1, s.b1, s.c1}].first.push_back(std::move(s));
      }
      for (auto& s : decompose(r, Side::right_carries_g).s54) {
        ++stats.shapes;
        groups[{s.g, s.a1, s.b1, s.c1}].second.push_back(std::move(s));
      }
    }
  }
  std::vector<const std::pair<std::vector<Shape53>, std::vector<Shape54>>*> work;
  for (const auto& [k, v] : groups)
    if (!v.first.empty() && !v.second.empty()) work.push_back(&v);

  std::vector<UnitOut> outs(work.size());
  const long count = static_cast<long>(work.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, opt.workers)) if (opt.workers > 1)
  for (long i = 0; i < count; ++i) {
    auto& out = outs[static_cast<std::size_t>(i)];
    out.stats.work_units = 1;
    for (const auto& s53 : work[static_cast<std::size_t>(i)]->first)
      for (const auto& s54 : work[static_cast<std::size_t>(i)]->second)
        record_pair(s53, s54, opt.max_bits, out);
  }
  std::vector<std::pair<NineTuple, Candidate>> keyed;
  for (auto& o : outs) {
    stats.merge(o.stats);
    merge_found(o.found, keyed);
  }
  return {dedup(std::move(keyed)), stats};
}

}  // namespace expeq
