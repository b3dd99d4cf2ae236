#include <numeric>
#include <doctest.h>

#include <random>

#include "expeq/solve.hpp"
#include "reference.hpp"

using namespace expeq;

namespace {

using Sols = std::vector<Solution>;

Sols solve(Int a, Int b, Int c, unsigned bits = 256, int workers = 1) {
  return enumerate_solutions(build_triple(a, b, c), bits, workers).solutions;
}

}  // namespace

TEST_SUITE("solve") {
  TEST_CASE("enumeration examples") {
    CHECK(solve(3, 5, 2, 64) == Sols{{1, 1, 3}, {3, 1, 5}, {1, 3, 7}});
    CHECK(solve(7, 49, 98, 64) == Sols{{2, 1, 1}, {7, 3, 3}});
    CHECK(solve(2, 88, 6, 64) == Sols{{7, 1, 3}, {5, 2, 5}});
    CHECK(solve(7, 7, 98) == Sols{{2, 2, 1}, {6, 7, 3}, {7, 6, 3}});
    CHECK(solve(6, 10, 2, 64) == Sols{{1, 1, 4}});
    CHECK(solve(4, 8, 32, 128) == Sols{{12, 8, 5}, {27, 18, 11}, {42, 28, 17}, {57, 38, 23}});
    CHECK(solve(3, 6, 5).empty());
  }

  TEST_CASE("bound handling") {
    auto set = enumerate_solutions(build_triple(3, 5, Int(1) << 70), 64);
    CHECK(set.bound_too_small);
    CHECK(set.solutions.empty());
    // 3 + 5 = 2^3 needs 2^3 < 2^4
    CHECK(solve(3, 5, 2, 3).empty());
    CHECK(solve(3, 5, 2, 4) == Sols{{1, 1, 3}});
  }

  TEST_CASE("classes and counts") {
    auto s = enumerate_solutions(build_triple(3, 5, 2), 64);
    CHECK(count_N(s) == 3);
    auto t = enumerate_solutions(build_triple(7, 7, 98), 256);
    CHECK(count_N(t) == 2);
    CHECK(t.classes == std::vector<std::vector<std::size_t>>{{0}, {1, 2}});
    CHECK(t.symmetric_count() == 2);
    CHECK(t.representatives() == Sols{{2, 2, 1}, {6, 7, 3}});
    auto u = enumerate_solutions(build_triple(2, 2, 6), 256);
    CHECK(u.raw_count() == 4);
    CHECK(count_N(u) == 2);
    auto v = enumerate_solutions(build_triple(2, 8, 24), 256);
    CHECK(v.raw_count() == 3);
    CHECK(count_N(v) == 2);
  }

  TEST_CASE("correspondence") {
    CHECK(correspond(7, 7, {6, 7, 3}, 7, 7, {7, 6, 3}));
    CHECK(correspond(7, 7, {6, 7, 3}, 7, 49, {7, 3, 3}));
    CHECK(!correspond(3, 6, {2, 1, 1}, 3, 6, {2, 3, 2}));
  }

  TEST_CASE("exceptional shapes") {
    auto m = detect_special_case(build_triple(2, 8, 24));
    CHECK(m.tag == SpecialCase::two_eight);
    CHECK(m.params == std::vector<std::pair<std::string, std::uint64_t>>{{"t", 1}});
    CHECK(m.predicted == solve(2, 8, 24));
    CHECK(detect_special_case(build_triple(8, 2, 24)).predicted == solve(8, 2, 24));
    auto n = detect_special_case(build_triple(3, 3, 6));
    CHECK(n.tag == SpecialCase::mersenne);
    CHECK(n.params == std::vector<std::pair<std::string, std::uint64_t>>{{"k", 2}, {"gamma", 1}});
    CHECK(n.predicted == solve(3, 3, 6));
    CHECK(detect_special_case(build_triple(7, 7, 98)).tag == SpecialCase::mersenne);
    CHECK(detect_special_case(build_triple(7, 7, 98)).predicted == solve(7, 7, 98));
    CHECK(detect_special_case(build_triple(2, 2, 48)).predicted == solve(2, 2, 48));
    CHECK(detect_special_case(build_triple(4, 8, 32)).tag == SpecialCase::powers_of_two);
    CHECK(detect_special_case(build_triple(5, 3, 2)).tag == SpecialCase::coprime_352);
    CHECK(detect_special_case(build_triple(5, 3, 2)).predicted == solve(5, 3, 2, 64));
    CHECK(detect_special_case(build_triple(3, 6, 15)).tag == SpecialCase::none);
    CHECK(to_string(SpecialCase::two_two) == "two-two");
  }

  TEST_CASE("power-of-two parametrization") {
    CHECK(power_of_two_solutions(1, 1, 1, 3) == Sols{{1, 1, 2}, {2, 2, 3}, {3, 3, 4}});
    CHECK(power_of_two_solutions(2, 3, 5, 4) == Sols{{12, 8, 5}});
    for (const auto& s : power_of_two_solutions(1, 2, 3, 6)) {
      CHECK(satisfies(2, 4, 8, s));
      CHECK(s.y % 3 == 1);
    }
    CHECK_THROWS_AS(power_of_two_solutions(2, 4, 2, 5), ArgumentError);
  }

  TEST_CASE("agrees with the double-loop oracle") {
    std::mt19937_64 rng(40);
    std::uniform_int_distribution<std::uint64_t> d(2, 100);
    for (int i = 0; i < 2000; ++i) {
      Int a = d(rng), b = d(rng), c = d(rng);
      if (i % 2) c = primitive_power(pow(a, 1 + i % 3) + pow(b, 1 + i % 4)).base;
      REQUIRE(solve(a, b, c, 40) == ref::enumerate(a, b, c, 40));
    }
  }

  TEST_CASE("worker count does not change the result") {
    for (auto [a, b, c] : {std::tuple{2, 2, 6}, {3, 5, 2}, {4, 8, 32}, {7, 7, 98}, {2, 6, 38}}) {
      auto one = solve(a, b, c, 512, 1);
      CHECK(solve(a, b, c, 512, 4) == one);
      CHECK(solve(a, b, c, 512, 8) == one);
    }
  }

  TEST_CASE("at most two classes on a random sample") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::uint64_t> d(2, 300);
    auto pow2 = [](std::uint64_t v) { return (v & (v - 1)) == 0; };
    int tested = 0;
    while (tested < 3000) {
      std::uint64_t a = d(rng), b = d(rng), c = d(rng);
      if (std::gcd(a, b) == 1 || (pow2(a) && pow2(b) && pow2(c))) continue;
      ++tested;
      auto t = build_triple(a, b, c);
      auto set = enumerate_solutions(t, 128);
      REQUIRE(count_N(set) <= 2);
      for (const auto& s : set.solutions) REQUIRE(satisfies(t, s));
      auto m = detect_special_case(t);
      if (m.tag == SpecialCase::none) REQUIRE(set.symmetric_count() <= 2);
    }
  }
}
