#include <doctest.h>

#include <algorithm>

#include "expeq/families.hpp"

using namespace expeq;

namespace {

NineTuple gen(Family f, const ParamMap& m) {
  auto r = gen_family(f, m);
  REQUIRE_MESSAGE(r.nine, "rejected: " << (r.violations.empty() ? "" : r.violations[0]));
  return *r.nine;
}

bool violated(const GenResult& r, const std::string& what) {
  return std::find(r.violations.begin(), r.violations.end(), what) != r.violations.end();
}

}  // namespace

TEST_SUITE("families") {
  TEST_CASE("generation") {
    CHECK(gen(Family::I, {{"u", 1}, {"h", 3}}) == NineTuple{2, 6, 10, {2, 1, 1}, {6, 2, 2}});
    CHECK(gen(Family::II, {{"t", 1}}) == NineTuple{6, 3, 3, {1, 1, 2}, {3, 3, 5}});
    CHECK(gen(Family::III, {{"g", 7}, {"j", 1}, {"u", 2}, {"d", 1}, {"k", 3}, {"w", 1}}) ==
          NineTuple{7, 49, 98, {2, 1, 1}, {7, 3, 3}});
    CHECK(gen(Family::III, {{"g", 7}, {"j", 1}, {"u", 2}, {"d", 1}, {"k", 3}}) ==
          NineTuple{7, 49, 98, {2, 1, 1}, {7, 3, 3}});
    CHECK(gen(Family::IV, {{"g", 3}, {"i", 1}, {"j", 1}, {"u", 1}, {"d", 5}, {"k", 2}, {"w", 1}}) ==
          NineTuple{6, 15, 21, {1, 1, 1}, {3, 2, 2}});
    auto r = gen_family(Family::IV, {{"g", 3}, {"i", 1}, {"j", 1}, {"u", 1}, {"d", 5}, {"k", 2}});
    CHECK(param(r.params, "h") == 2);
    CHECK(param(r.params, "v") == 1);
  }

  TEST_CASE("constraint violations are named") {
    auto d1 = gen_family(Family::IV, {{"g", 3}, {"i", 1}, {"j", 1}, {"u", 1}, {"d", 1}, {"k", 2}});
    CHECK(!d1.nine);
    CHECK(violated(d1, "d must not be 1"));
    CHECK(violated(gen_family(Family::I, {{"u", 0}, {"h", 3}}), "u must be > 0"));
    CHECK(violated(gen_family(Family::I, {{"u", 1}}), "missing parameter h"));
    CHECK(violated(gen_family(Family::II, {{"t", 1}, {"q", 2}}), "unknown parameter q"));
    CHECK(!gen_family(Family::III, {{"g", 5}, {"j", 1}, {"u", 1}, {"d", 1}, {"k", 3}}).nine);
    // g = 1 would re-encode family I inside IV
    CHECK(!gen_family(Family::IV, {{"g", 1}, {"i", 1}, {"j", 1}, {"u", 1}, {"d", 3}, {"k", 2}}).nine);
    CHECK(parse_family("iii") == Family::III);
    CHECK(parse_family("V") == std::nullopt);
    CHECK(parse_family("3") == Family::III);
    CHECK(parse_family("IV") == Family::IV);
  }

  TEST_CASE("exact membership") {
    auto w = in_F({7, 49, 98, {2, 1, 1}, {7, 3, 3}});
    REQUIRE(w);
    CHECK(w->family == Family::III);
    CHECK(!in_F({7, 7, 98, {2, 2, 1}, {6, 7, 3}}));
    auto v = in_F({6, 3, 3, {1, 1, 2}, {3, 3, 5}});
    REQUIRE(v);
    CHECK(v->family == Family::II);
    CHECK(param(v->params, "t") == 1);
  }

  TEST_CASE("membership up to correspondence") {
    auto m = in_family({7, 7, 98, {2, 2, 1}, {6, 7, 3}});
    CHECK(m.status == MembershipStatus::member);
    REQUIRE(m.witness);
    CHECK(m.witness->family == Family::III);
    CHECK(m.witness->member == NineTuple{7, 49, 98, {2, 1, 1}, {7, 3, 3}});
    CHECK(in_family({2, 6, 38, {1, 2, 1}, {5, 1, 1}}).status == MembershipStatus::absent);
    auto i = in_family({2, 6, 10, {2, 1, 1}, {6, 2, 2}});
    REQUIRE(i.witness);
    CHECK(i.witness->family == Family::I);
    CHECK(in_family({2, 6, 38, {1, 2, 1}, {5, 1, 1}}, 1).status ==
          MembershipStatus::bound_exhausted);
  }

  TEST_CASE("classification") {
    for (const auto& k : known_anomalous_cases()) {
      CHECK(classify_nine(k).status == MembershipStatus::absent);
      CHECK(!in_F(k));
      CHECK(is_known_anomalous(k));
    }
    auto iv = classify_nine({6, 15, 21, {1, 1, 1}, {3, 2, 2}});
    REQUIRE(iv.witness);
    CHECK(iv.witness->family == Family::IV);
    auto iii = classify_nine({19, 38, 57, {1, 1, 1}, {4, 3, 3}});
    REQUIRE(iii.witness);
    CHECK(iii.witness->family == Family::III);
    CHECK(format_params(iii.witness->params) == "g=19 j=1 u=1 d=2 k=3 w=1");
    CHECK_THROWS_AS(classify_nine({3, 5, 2, {1, 1, 3}, {3, 1, 5}}), ArgumentError);
    CHECK_THROWS_AS(classify_nine({7, 7, 98, {6, 7, 3}, {7, 6, 3}}), ArgumentError);
    CHECK_THROWS_AS(classify_nine({3, 6, 15, {1, 1, 1}, {2, 3, 2}}), ArgumentError);
  }

  TEST_CASE("normalization") {
    auto n = normalize({6, 3, 15, {1, 2, 1}, {3, 2, 2}});
    CHECK(n == NineTuple{3, 6, 15, {2, 1, 1}, {2, 3, 2}});
    auto p = normalize({9, 6, 15, {1, 1, 1}, {1, 3, 2}});
    CHECK(p.a == 3);
    CHECK(p.b == 6);
    CHECK(p.s1 == Solution{2, 1, 1});
    CHECK(is_known_anomalous({6, 3, 15, {1, 2, 1}, {3, 2, 2}}));
  }

  TEST_CASE("grid roundtrip and closure") {
    std::size_t total = 0;
    for (Family f : {Family::I, Family::II, Family::III, Family::IV}) {
      for (const auto& params : parameter_grid(f, 128)) {
        ++total;
        auto nine = gen(f, params);
        REQUIRE(satisfies(nine.a, nine.b, nine.c, nine.s1));
        REQUIRE(satisfies(nine.a, nine.b, nine.c, nine.s2));
        REQUIRE(!correspond(nine.a, nine.b, nine.s1, nine.a, nine.b, nine.s2));
        auto all = all_F_witnesses(nine);
        REQUIRE(std::any_of(all.begin(), all.end(), [&](const FamilyWitness& w) {
          return w.family == f && w.params == gen_family(f, params).params;
        }));
        REQUIRE(std::is_sorted(all.begin(), all.end(), witness_less));
        auto m = in_family(nine);
        REQUIRE(m.status == MembershipStatus::member);
        REQUIRE(std::any_of(all.begin(), all.end(),
                            [&](const FamilyWitness& w) { return w.family == m.witness->family; }));
      }
    }
    CHECK(total == 56 + 8 + 631 + 146);
  }
}
