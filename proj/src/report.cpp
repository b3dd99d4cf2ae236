#include "expeq/report.hpp"

namespace expeq {

nlohmann::ordered_json json_int(const Int& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) return v.get_si();
  return v.get_str();
}

std::string equation_string(const Int& a, unsigned x, const Int& b, unsigned y, const Int& c,
                            unsigned z) {
  auto term = [](const Int& base, unsigned e) {
    return e == 1 ? base.get_str() : base.get_str() + "^" + std::to_string(e);
  };
  return term(a, x) + " + " + term(b, y) + " = " + term(c, z);
}

nlohmann::ordered_json nine_json(const NineTuple& n) {
  return {{"a", json_int(n.a)},   {"b", json_int(n.b)},   {"c", json_int(n.c)},
          {"x1", n.s1.x},         {"y1", n.s1.y},         {"z1", n.s1.z},
          {"x2", n.s2.x},         {"y2", n.s2.y},         {"z2", n.s2.z}};
}

nlohmann::ordered_json candidate_json(const Candidate& c) {
  auto j = nine_json(normalize(c.nine));
  j["classification"] = to_string(c.status);
  if (c.witness) {
    j["family"] = to_string(c.witness->family);
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.witness->params) params[k] = json_int(v);
    j["params"] = params;
  } else {
    j["family"] = nullptr;
    j["params"] = nullptr;
  }
  j["bound_bits"] = c.bound_bits;
  return j;
}

std::string csv_header() { return "a,b,c,x1,y1,z1,x2,y2,z2,classification,family,params,bound_bits"; }

std::string candidate_csv(const Candidate& c) {
  auto n = normalize(c.nine);
  std::string out = n.a.get_str() + "," + n.b.get_str() + "," + n.c.get_str();
  for (unsigned v : {n.s1.x, n.s1.y, n.s1.z, n.s2.x, n.s2.y, n.s2.z})
    out += "," + std::to_string(v);
  out += "," + to_string(c.status) + ",";
  if (c.witness) out += to_string(c.witness->family) + "," + format_params(c.witness->params);
  else out += ",";
  return out + "," + std::to_string(c.bound_bits);
}

std::string candidate_human(const Candidate& c) {
  auto n = normalize(c.nine);
  std::string out = "(" + n.a.get_str() + ", " + n.b.get_str() + ", " + n.c.get_str() + "): " +
                    equation_string(n.a, n.s1.x, n.b, n.s1.y, n.c, n.s1.z) + "; " +
                    equation_string(n.a, n.s2.x, n.b, n.s2.y, n.c, n.s2.z) + "  " +
                    to_string(c.status);
  if (c.witness)
    out += " " + to_string(c.witness->family) + " [" + format_params(c.witness->params) + "]";
  return out;
}

nlohmann::ordered_json stats_json(const SearchStats& s) {
  return {{"work_units", s.work_units}, {"shapes", s.shapes},     {"candidates", s.candidates},
          {"solved", s.solved},         {"verified", s.verified}, {"family", s.family},
          {"anomalous", s.anomalous},   {"rejected", s.rejected}};
}

}  // namespace expeq
