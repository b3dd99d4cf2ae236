#include <numeric>
#include <doctest.h>

#include <random>

#include "expeq/classify.hpp"

using namespace expeq;

namespace {

TypeTag tag(Int a, Int b, Int c, Solution s, Int p) {
  return type_profile(build_triple(a, b, c), s).tag_at(p);
}

}  // namespace

TEST_SUITE("classify") {
  TEST_CASE("type tags") {
    CHECK(tag(3, 6, 15, {2, 1, 1}, 3) == TypeTag::A);
    CHECK(tag(3, 6, 15, {2, 3, 2}, 3) == TypeTag::B);
    CHECK(tag(7, 49, 98, {2, 1, 1}, 7) == TypeTag::O);
    CHECK(tag(6, 3, 3, {3, 3, 5}, 3) == TypeTag::C);
    CHECK_THROWS_AS(type_profile(build_triple(3, 5, 2), {1, 1, 3}), ArgumentError);
    CHECK_THROWS_AS(type_profile(build_triple(3, 6, 15), {1, 1, 1}), ArgumentError);
    CHECK(classify_values(3, 1, 1) == TypeTag::A);
    CHECK(classify_values(2, 2, 2) == TypeTag::O);
    CHECK_THROWS_AS(classify_values(1, 2, 3), InvariantError);
  }

  TEST_CASE("reduced data for Type A") {
    auto t = build_triple(2, 6, 38);
    auto d = type_a_data(t, 2, {5, 1, 1});
    CHECK(d.s == 1);
    CHECK(d.t == 1);
    CHECK(d.n == 1);
    CHECK(d.R == 19);
    CHECK(d.S == 3);
    CHECK(d.f == 16);

    auto u = build_triple(2, 6, 10);
    auto e = type_a_data(u, 2, {2, 1, 1});
    CHECK(e.R == 5);
    CHECK(e.S == 3);
    CHECK(e.f == 2);
    auto f = type_a_data(u, 2, {6, 2, 2});
    CHECK(f.n == 2);
    CHECK(f.f == 16);
    CHECK(f.residual == 16);
    CHECK(f.D * f.f == pow(Int(2), 6));
    CHECK_THROWS_AS(type_a_data(build_triple(3, 6, 15), 3, {2, 3, 2}), ArgumentError);
  }

  TEST_CASE("reduced data for Type C") {
    auto t = build_triple(6, 3, 3);
    auto d = type_c_data(t, 3, {1, 1, 2});
    CHECK(d.r == 1);
    CHECK(d.s == 1);
    CHECK(d.n == 1);
    CHECK(d.R == 2);
    CHECK(d.S == 1);
    CHECK(d.f == 3);
    auto e = type_c_data(t, 3, {3, 3, 5});
    CHECK(e.n == 3);
    CHECK(e.f == 9);
    auto f = type_c_data(build_triple(18, 3, 3), 3, {1, 2, 3});
    CHECK(f.f == 3);
    CHECK_THROWS_AS(type_c_data(t, 3, {2, 2, 2}), ArgumentError);
  }

  TEST_CASE("dominance screen and Type-O census") {
    auto t = build_triple(30, 70, 4930);
    auto sols = enumerate_solutions(t, 256).solutions;
    CHECK(dominance_screen(t, std::span<const Solution>(sols)).empty());
    auto u = build_triple(3, 6, 15);
    auto us = enumerate_solutions(u, 256).solutions;
    CHECK(dominance_screen(u, std::span<const Solution>(us)).empty());
    CHECK(type_o_census(u, us) == std::vector<std::pair<Int, std::size_t>>{{3, 0}});

    auto v = build_triple(7, 49, 98);
    auto vs = enumerate_solutions(v, 256).solutions;
    CHECK(type_o_census(v, vs) == std::vector<std::pair<Int, std::size_t>>{{7, 1}});
    auto w = build_triple(19, 38, 57);
    auto ws = enumerate_solutions(w, 256).solutions;
    CHECK(type_o_census(w, ws) == std::vector<std::pair<Int, std::size_t>>{{19, 1}});

    // a = 2^2 3, b = 2 3, c = 2 3: 2 dominates 3 in both ratios.
    auto x = build_triple(12, 6, 6);
    PrimeType p2{2, TypeTag::B, 2, 3, 1}, p3{3, TypeTag::A, 1, 1, 1};
    TypeProfile fake{{1, 1, 1}, {p2, p3}};
    std::vector<TypeProfile> profiles{fake};
    auto viol = dominance_screen(x, std::span<const TypeProfile>(profiles));
    REQUIRE(viol.size() == 1);
    CHECK(viol[0].p == 2);
    CHECK(viol[0].q == 3);
    CHECK(viol[0].tag == TypeTag::B);
  }

  TEST_CASE("rigid shapes") {
    CHECK(f_rigid_shape(build_triple(2, 6, 10)) == RigidShape::mersenne_pair);
    CHECK(f_rigid_shape(build_triple(2, 28, 6)) == RigidShape::seven_three);
    CHECK(f_rigid_shape(build_triple(2, 2, 6)) == RigidShape::one_three);
    CHECK(f_rigid_shape(build_triple(3, 6, 15)) == RigidShape::none);
  }

  TEST_CASE("structural properties over random triples") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::uint64_t> d(2, 400);
    int tested = 0;
    while (tested < 3000) {
      std::uint64_t a = d(rng), b = d(rng), c = d(rng);
      if (std::gcd(std::gcd(a, b), c) == 1) {
        // Build a solvable triple sharing a prime with a and b.
        std::uint64_t g = std::gcd(a, b);
        if (g == 1) continue;
        c = Int(primitive_power(Int(a) + Int(b)).base).get_ui();
        if (std::gcd(g, c) == 1) continue;
      }
      ++tested;
      auto t = build_triple(a, b, c);
      auto sols = enumerate_solutions(t, 128).solutions;
      std::vector<TypeProfile> prof;
      for (const auto& s : sols) prof.push_back(type_profile(t, s));
      REQUIRE(dominance_screen(t, std::span<const TypeProfile>(prof)).empty());
      REQUIRE_NOTHROW(type_o_census(t, sols));
      for (const auto& cp : t.common()) {
        bool has_c = false, has_other = false;
        std::vector<const TypeProfile*> type_a;
        for (const auto& p : prof) {
          auto tg = p.tag_at(cp.prime);
          (tg == TypeTag::C ? has_c : has_other) = true;
          if (tg == TypeTag::A) {
            type_a.push_back(&p);
            auto rd = type_a_data(t, cp.prime, p.solution);
            REQUIRE(rd.D * rd.f == pow(t.a(), p.solution.x));
          }
          if (tg == TypeTag::C) {
            auto rd = type_c_data(t, cp.prime, p.solution);
            REQUIRE(rd.D * rd.f == pow(t.c(), p.solution.z));
          }
        }
        REQUIRE(!(has_c && has_other));
        if (type_a.size() == 2) {
          auto f1 = type_a_data(t, cp.prime, type_a[0]->solution);
          auto f2 = type_a_data(t, cp.prime, type_a[1]->solution);
          if (prime_set(f1.f) == prime_set(f2.f)) REQUIRE(f_rigid_shape(t) != RigidShape::none);
        }
      }
    }
  }
}
