#pragma once

// Serialization of results: JSON lines, CSV and a human form.

#include <string>

#include <json.hpp>

#include "expeq/search.hpp"

namespace expeq {

// JSON number when the value fits in int64, otherwise a decimal string.
nlohmann::ordered_json json_int(const Int& v);

// "2^5 + 6 = 38": exponents of 1 are omitted.
std::string equation_string(const Int& a, unsigned x, const Int& b, unsigned y, const Int& c,
                            unsigned z);

nlohmann::ordered_json nine_json(const NineTuple& n);

// {a,b,c,x1,y1,z1,x2,y2,z2,classification,family,params,bound_bits}, on the
// normalized nine-tuple.
nlohmann::ordered_json candidate_json(const Candidate& c);

std::string csv_header();
std::string candidate_csv(const Candidate& c);
std::string candidate_human(const Candidate& c);

nlohmann::ordered_json stats_json(const SearchStats& s);

}  // namespace expeq
