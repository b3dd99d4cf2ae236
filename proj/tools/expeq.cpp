#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "expeq/classify.hpp"
#include "expeq/report.hpp"
#include "verify.hpp"

namespace {

using namespace expeq;
using json = nlohmann::ordered_json;

enum class Format { json_lines, csv, human };

struct Config {
  unsigned max_bits = kDefaultMaxBits;
  unsigned budget = 0;
  int workers = 1;
  std::string format = "json-lines";

  Format fmt() const {
    if (format == "csv") return Format::csv;
    if (format == "human") return Format::human;
    return Format::json_lines;
  }
};

// Data problems the user can fix: exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Int parse_int(const std::string& s, const char* what) {
  Int v;
  if (s.empty() || v.set_str(s, 10) != 0) throw InputError(std::string(what) + ": not an integer: " + s);
  return v;
}

unsigned parse_exp(const std::string& s) {
  Int v = parse_int(s, "exponent");
  if (v < 1 || v > 1u << 20) throw InputError("exponent out of range: " + s);
  return static_cast<unsigned>(v.get_ui());
}

Triple triple_of(const std::vector<std::string>& v) {
  Int a = parse_int(v[0], "a"), b = parse_int(v[1], "b"), c = parse_int(v[2], "c");
  try {
    return build_triple(a, b, c);
  } catch (const ArgumentError& e) {
    throw InputError(e.what());
  }
}

std::string sol_str(const Solution& s) {
  return "(" + std::to_string(s.x) + "," + std::to_string(s.y) + "," + std::to_string(s.z) + ")";
}

std::string profile_str(const TypeProfile& p) {
  std::string out;
  for (const auto& e : p.primes) out += (out.empty() ? "" : " ") + e.prime.get_str() + ":" + to_char(e.tag);
  return out;
}

Candidate as_candidate(const NineTuple& nine, const Membership& m) {
  Candidate c;
  c.nine = nine;
  c.witness = m.witness;
  c.bound_bits = m.bound_bits;
  c.solution_count = 2;
  switch (m.status) {
    case MembershipStatus::member: c.status = CandidateStatus::family_member; break;
    case MembershipStatus::absent: c.status = CandidateStatus::anomalous; break;
    case MembershipStatus::bound_exhausted: c.status = CandidateStatus::bound_exhausted; break;
  }
  return c;
}

void print_candidate(const Candidate& c, Format f, bool header) {
  switch (f) {
    case Format::json_lines: std::cout << candidate_json(c).dump() << '\n'; break;
    case Format::csv:
      if (header) std::cout << csv_header() << '\n';
      std::cout << candidate_csv(c) << '\n';
      break;
    case Format::human: std::cout << candidate_human(c) << '\n'; break;
  }
}

int cmd_enumerate(const Config& cfg, const std::vector<std::string>& args) {
  auto t = triple_of(args);
  auto set = enumerate_solutions(t, cfg.max_bits, cfg.workers);
  auto special = detect_special_case(t);
  const bool typed = !t.common().empty();
  std::vector<std::size_t> class_of(set.solutions.size());
  for (std::size_t k = 0; k < set.classes.size(); ++k)
    for (auto i : set.classes[k]) class_of[i] = k;

  std::optional<Membership> verdict;
  std::optional<NineTuple> nine;
  if (count_N(set) == 2 && t.gcd_ab() > 1) {
    auto reps = set.representatives();
    nine = NineTuple{t.a(), t.b(), t.c(), reps[0], reps[1]};
    verdict = classify_nine(*nine, cfg.budget);
  }

  switch (cfg.fmt()) {
    case Format::json_lines: {
      json sols = json::array();
      for (std::size_t i = 0; i < set.solutions.size(); ++i) {
        const auto& s = set.solutions[i];
        json e = {{"x", s.x}, {"y", s.y}, {"z", s.z}, {"class", class_of[i]}};
        if (typed) e["types"] = profile_str(type_profile(t, s));
        sols.push_back(e);
      }
      json params = json::object();
      for (const auto& [k, v] : special.params) params[k] = v;
      json j = {{"a", json_int(t.a())},
                {"b", json_int(t.b())},
                {"c", json_int(t.c())},
                {"bound_bits", set.bound_bits},
                {"bound_too_small", set.bound_too_small},
                {"solutions", sols},
                {"N", count_N(set)},
                {"special", {{"tag", to_string(special.tag)}, {"params", params}}}};
      if (verdict) j["classification"] = candidate_json(as_candidate(*nine, *verdict));
      std::cout << j.dump() << '\n';
      break;
    }
    case Format::csv:
      std::cout << "a,b,c,x,y,z,class,types\n";
      for (std::size_t i = 0; i < set.solutions.size(); ++i) {
        const auto& s = set.solutions[i];
        std::cout << t.a() << ',' << t.b() << ',' << t.c() << ',' << s.x << ',' << s.y << ','
                  << s.z << ',' << class_of[i] << ','
                  << (typed ? profile_str(type_profile(t, s)) : "") << '\n';
      }
      break;
    case Format::human:
      std::cout << "(" << t.a() << ", " << t.b() << ", " << t.c() << "), c^z < 2^" << set.bound_bits
                << '\n';
      for (std::size_t i = 0; i < set.solutions.size(); ++i) {
        const auto& s = set.solutions[i];
        std::cout << "  " << sol_str(s) << "  " << equation_string(t.a(), s.x, t.b(), s.y, t.c(), s.z)
                  << "  class " << class_of[i];
        if (typed) std::cout << "  " << profile_str(type_profile(t, s));
        std::cout << '\n';
      }
      std::cout << "N = " << count_N(set) << ", raw " << set.raw_count() << ", special "
                << to_string(special.tag);
      for (const auto& [k, v] : special.params) std::cout << ' ' << k << '=' << v;
      std::cout << '\n';
      if (verdict) std::cout << candidate_human(as_candidate(*nine, *verdict)) << '\n';
      break;
  }
  if (set.bound_too_small) {
    std::cerr << "warning: c >= 2^" << cfg.max_bits << ", nothing enumerated\n";
    return 2;
  }
  return 0;
}

int cmd_classify(const Config& cfg, const std::vector<std::string>& args) {
  if (args.size() < 3 || (args.size() - 3) % 3 != 0)
    throw InputError("classify takes a b c followed by zero or more x y z triples");
  auto t = triple_of(args);
  if (t.common().empty()) throw InputError("gcd(a, b, c) = 1: no common primes to type against");
  std::vector<Solution> sols;
  for (std::size_t i = 3; i < args.size(); i += 3)
    sols.push_back({parse_exp(args[i]), parse_exp(args[i + 1]), parse_exp(args[i + 2])});
  if (sols.empty()) sols = enumerate_solutions(t, cfg.max_bits, cfg.workers).solutions;
  for (const auto& s : sols)
    if (!satisfies(t, s)) throw InputError(sol_str(s) + " is not a solution");

  std::vector<TypeProfile> profiles;
  for (const auto& s : sols) profiles.push_back(type_profile(t, s));
  auto violations = dominance_screen(t, std::span<const TypeProfile>(profiles));
  auto census = type_o_census(t, sols);
  auto classes = maximal_proportional_classes(t);

  json q = json::array();
  for (const auto& cp : t.common())
    q.push_back({{"p", json_int(cp.prime)}, {"alpha", cp.alpha}, {"beta", cp.beta}, {"gamma", cp.gamma}});
  json gs = json::array();
  for (const auto& cl : classes) {
    auto gd = g_decomposition(t, cl);
    gs.push_back({{"g", json_int(gd.g)}, {"alpha", gd.alpha_g}, {"beta", gd.beta_g}, {"gamma", gd.gamma_g}});
  }
  json types = json::array();
  for (const auto& p : profiles)
    types.push_back({{"x", p.solution.x}, {"y", p.solution.y}, {"z", p.solution.z}, {"types", profile_str(p)}});
  json viol = json::array();
  for (const auto& v : violations)
    viol.push_back({{"solution", v.solution_index}, {"p", json_int(v.p)}, {"q", json_int(v.q)},
                    {"tag", std::string(1, to_char(v.tag))}});
  json j = {{"a", json_int(t.a())},   {"b", json_int(t.b())},   {"c", json_int(t.c())},
            {"a1", json_int(t.a1())}, {"b1", json_int(t.b1())}, {"c1", json_int(t.c1())},
            {"Q", q},                 {"g", gs},                {"solutions", types},
            {"dominance_violations", viol}};
  json o = json::object();
  for (const auto& [p, n] : census) o[p.get_str()] = n;
  j["type_o"] = o;

  std::optional<Candidate> cand;
  if (sols.size() == 2 && t.gcd_ab() > 1 && !correspond(t, sols[0], t, sols[1])) {
    NineTuple nine{t.a(), t.b(), t.c(), sols[0], sols[1]};
    cand = as_candidate(nine, classify_nine(nine, cfg.budget));
    j["classification"] = candidate_json(*cand);
  }

  if (cfg.fmt() == Format::human) {
    std::cout << "(" << t.a() << ", " << t.b() << ", " << t.c() << ")  a1=" << t.a1()
              << " b1=" << t.b1() << " c1=" << t.c1() << '\n';
    for (const auto& cp : t.common())
      std::cout << "  p=" << cp.prime << " (" << cp.alpha << "," << cp.beta << "," << cp.gamma << ")\n";
    for (const auto& g : gs) std::cout << "  g=" << g["g"].dump() << '\n';
    for (const auto& p : profiles)
      std::cout << "  " << sol_str(p.solution) << "  " << profile_str(p) << '\n';
    for (const auto& v : violations)
      std::cout << "  dominance violated: solution " << v.solution_index << " at " << v.p
                << " (over " << v.q << ") is " << to_char(v.tag) << '\n';
    if (cand) std::cout << candidate_human(*cand) << '\n';
  } else {
    std::cout << j.dump() << '\n';
  }
  return 0;
}

ParamMap parse_params(const std::vector<std::string>& kv) {
  ParamMap m;
  for (const auto& s : kv) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("expected name=value, got " + s);
    m.push_back({s.substr(0, eq), parse_int(s.substr(eq + 1), s.substr(0, eq).c_str())});
  }
  return m;
}

int cmd_family_gen(const Config& cfg, const std::string& fam, const std::vector<std::string>& kv) {
  auto f = parse_family(fam);
  if (!f) throw InputError("unknown family " + fam);
  auto r = gen_family(*f, parse_params(kv));
  if (!r.nine) {
    for (const auto& v : r.violations) std::cerr << "violation: " << v << '\n';
    return 2;
  }
  const auto& n = *r.nine;
  if (cfg.fmt() == Format::human) {
    std::cout << to_string(*f) << " [" << format_params(r.params) << "]  " << n.str() << '\n'
              << "  " << equation_string(n.a, n.s1.x, n.b, n.s1.y, n.c, n.s1.z) << '\n'
              << "  " << equation_string(n.a, n.s2.x, n.b, n.s2.y, n.c, n.s2.z) << '\n';
  } else if (cfg.fmt() == Format::csv) {
    std::cout << "family,params,a,b,c,x1,y1,z1,x2,y2,z2\n"
              << to_string(*f) << ',' << format_params(r.params) << ',' << n.a << ',' << n.b << ','
              << n.c << ',' << n.s1.x << ',' << n.s1.y << ',' << n.s1.z << ',' << n.s2.x << ','
              << n.s2.y << ',' << n.s2.z << '\n';
  } else {
    json params = json::object();
    for (const auto& [k, v] : r.params) params[k] = json_int(v);
    auto j = nine_json(n);
    j["family"] = to_string(*f);
    j["params"] = params;
    j["verified"] = true;
    std::cout << j.dump() << '\n';
  }
  return 0;
}

int cmd_family_check(const Config& cfg, const std::vector<std::string>& args) {
  if (args.size() != 9) throw InputError("family check takes a b c x1 y1 z1 x2 y2 z2");
  NineTuple nine{parse_int(args[0], "a"), parse_int(args[1], "b"), parse_int(args[2], "c"),
                 {parse_exp(args[3]), parse_exp(args[4]), parse_exp(args[5])},
                 {parse_exp(args[6]), parse_exp(args[7]), parse_exp(args[8])}};
  Membership m;
  try {
    m = classify_nine(nine, cfg.budget);
  } catch (const ArgumentError& e) {
    throw InputError(e.what());
  }
  print_candidate(as_candidate(nine, m), cfg.fmt(), true);
  if (m.status == MembershipStatus::bound_exhausted) {
    std::cerr << "warning: family search budget of " << m.bound_bits << " bits exhausted\n";
    return 2;
  }
  return 0;
}

void print_report(const SearchReport& rep, Format f) {
  bool header = true;
  for (const auto& c : rep.results) {
    print_candidate(c, f, header);
    header = false;
  }
  if (f == Format::csv && rep.results.empty()) std::cout << csv_header() << '\n';
  const auto& s = rep.stats;
  switch (f) {
    case Format::json_lines: std::cout << json{{"summary", stats_json(s)}}.dump() << '\n'; break;
    case Format::csv: std::cerr << "summary " << stats_json(s).dump() << '\n'; break;
    case Format::human:
      std::cout << "candidates " << s.candidates << ", solved " << s.solved << ", verified "
                << s.verified << ", family " << s.family << ", anomalous " << s.anomalous << '\n';
      break;
  }
}

struct SearchArgs {
  DirectBounds bounds;
  std::string checkpoint;
  std::size_t checkpoint_every = 256;
  std::string input;
  std::uint64_t gen_rad = 0, gen_height = 0;
};

int cmd_search_direct(const Config& cfg, const SearchArgs& a) {
  SearchOptions opt{cfg.workers, cfg.max_bits, a.checkpoint, a.checkpoint_every};
  print_report(direct_search(a.bounds, opt), cfg.fmt());
  return 0;
}

int cmd_search_pipeline(const Config& cfg, const SearchArgs& a) {
  std::vector<EquationRecord> records;
  int rc = 0;
  if (!a.input.empty()) {
    std::ifstream in(a.input);
    if (!in) throw InputError("cannot open " + a.input);
    auto ing = ingest_equations(in);
    for (const auto& d : ing.diagnostics) std::cerr << a.input << ':' << d.line << ": " << d.message << '\n';
    if (ing.rejected > 0) rc = 2;
    records = std::move(ing.records);
  }
  if (a.gen_rad > 0 || a.gen_height > 0) {
    if (a.gen_rad == 0 || a.gen_height == 0)
      throw InputError("--gen-rad and --gen-height go together");
    auto gen = generate_equations(a.gen_rad, a.gen_height);
    records.insert(records.end(), gen.begin(), gen.end());
  }
  SearchOptions opt{cfg.workers, cfg.max_bits, "", 256};
  print_report(pipeline_search(records, opt), cfg.fmt());
  return rc;
}

int cmd_verify(int only, std::uint64_t seed) {
  verify::Options opt;
  opt.seed = seed;
  bool all = true;
  for (int id = 1; id <= verify::kCriteria; ++id) {
    if (only && id != only) continue;
    auto o = verify::run(id, opt);
    std::cout << verify::format(o) << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solutions of a^x + b^y = c^z: enumeration, classification, families, search"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--max-bits", cfg.max_bits, "Enumeration bound: c^z < 2^max-bits")
      ->envname("EXPEQ_MAX_BITS")
      ->check(CLI::Range(1u, 1u << 16))
      ->capture_default_str();
  app.add_option("--workers", cfg.workers, "OpenMP threads for enumeration and search")
      ->envname("EXPEQ_WORKERS")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  app.add_option("--format", cfg.format, "json-lines, csv or human")
      ->envname("EXPEQ_FORMAT")
      ->check(CLI::IsMember({"json-lines", "csv", "human"}))
      ->capture_default_str();
  app.add_option("--budget", cfg.budget, "Family membership budget in bits (0: automatic)")
      ->envname("EXPEQ_FAMILY_BUDGET")
      ->capture_default_str();

  std::vector<std::string> args;
  auto* en = app.add_subcommand("enumerate", "All solutions below the bound, classes, N and types");
  en->add_option("triple", args, "a b c")->expected(3)->required();

  auto* cl = app.add_subcommand("classify", "Per-prime types, dominance screen and g-decomposition");
  cl->add_option("args", args, "a b c [x y z ...]")->required();

  auto* fam = app.add_subcommand("family", "Family generation and membership");
  fam->require_subcommand(1);
  std::string fam_name;
  std::vector<std::string> kv;
  auto* gen = fam->add_subcommand("gen", "Generate a member from parameters name=value");
  gen->add_option("family", fam_name, "I, II, III or IV")->required();
  gen->add_option("params", kv, "name=value ...");
  auto* chk = fam->add_subcommand("check", "Family witness or anomalous verdict");
  chk->add_option("nine", args, "a b c x1 y1 z1 x2 y2 z2")->expected(9)->required();

  auto* se = app.add_subcommand("search", "Search for two-solution triples");
  se->require_subcommand(1);
  SearchArgs sa;
  auto* dir = se->add_subcommand("direct", "Exhaustive box over g, a1, b1 and exponents");
  dir->add_option("--a1-max", sa.bounds.a1_max)->envname("EXPEQ_A1_MAX")->capture_default_str();
  dir->add_option("--g-max", sa.bounds.g_max)->envname("EXPEQ_G_MAX")->capture_default_str();
  dir->add_option("--b1-max", sa.bounds.b1_max)->envname("EXPEQ_B1_MAX")->capture_default_str();
  dir->add_option("--exp-max", sa.bounds.exp_max)->envname("EXPEQ_EXP_MAX")->capture_default_str();
  dir->add_option("--checkpoint", sa.checkpoint, "Progress file; resumed when present");
  dir->add_option("--checkpoint-every", sa.checkpoint_every, "Work units between checkpoints")
      ->check(CLI::PositiveNumber);
  auto* pipe = se->add_subcommand("pipeline", "Pair decompositions of A + B = C equations");
  pipe->add_option("input", sa.input, "Equation list, \"A B C\" per line");
  pipe->add_option("--gen-rad", sa.gen_rad, "Generate equations with rad(ABC) <= this")
      ->envname("EXPEQ_GEN_RAD");
  pipe->add_option("--gen-height", sa.gen_height, "Generated equations have C <= this")
      ->envname("EXPEQ_GEN_HEIGHT");

  auto* vp = app.add_subcommand("verify-paper", "Run the acceptance checks");
  int only = 0;
  std::uint64_t seed = verify::Options{}.seed;
  vp->add_option("--only", only, "Run a single criterion")->check(CLI::Range(1, verify::kCriteria));
  vp->add_option("--seed", seed, "Seed for the randomized checks")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*en) return cmd_enumerate(cfg, args);
    if (*cl) return cmd_classify(cfg, args);
    if (*gen) return cmd_family_gen(cfg, fam_name, kv);
    if (*chk) return cmd_family_check(cfg, args);
    if (*dir) return cmd_search_direct(cfg, sa);
    if (*pipe) {
      if (sa.input.empty() && sa.gen_rad == 0 && sa.gen_height == 0) {
        std::cerr << "search pipeline needs an input file or --gen-rad/--gen-height\n";
        return 1;
      }
      return cmd_search_pipeline(cfg, sa);
    }
    if (*vp) return cmd_verify(only, seed);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvariantError& e) {
    std::cerr << "invariant failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
