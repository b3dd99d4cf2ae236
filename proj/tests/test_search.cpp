#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "expeq/search.hpp"
#include "reference.hpp"

using namespace expeq;

namespace {

std::vector<NineTuple> keys(const std::vector<Candidate>& cs) {
  std::vector<NineTuple> out;
  for (const auto& c : cs) out.push_back(normalize(c.nine));
  return out;
}

bool has_record(const std::vector<EquationRecord>& v, int A, int B, int C) {
  return std::any_of(v.begin(), v.end(),
                     [&](const EquationRecord& r) { return r.A == A && r.B == B && r.C == C; });
}

}  // namespace

TEST_SUITE("search") {
  TEST_CASE("ingest") {
    std::istringstream in(
        "# header\n"
        "16 3 19\n"
        "\n"
        "1 18 19  # trailing comment\n"
        "2 3\n"
        "4 6 10\n"
        "5 5 11\n"
        "x 1 2\n");
    auto r = ingest_equations(in);
    CHECK(r.records.size() == 2);
    CHECK(r.rejected == 4);
    REQUIRE(r.diagnostics.size() == 4);
    CHECK(r.diagnostics[0].line == 5);
    CHECK(r.diagnostics[1].line == 6);
    CHECK(r.diagnostics[2].line == 7);
    CHECK(r.diagnostics[3].line == 8);
  }

  TEST_CASE("generated equations") {
    auto v = generate_equations(30, 100);
    CHECK(has_record(v, 1, 8, 9));
    CHECK(has_record(v, 5, 27, 32));
    CHECK(v.size() == 17);
    CHECK(!has_record(v, 3, 125, 128));  // 128 is above the height
    auto w = generate_equations(30, 200);
    CHECK(w.size() == 18);
    CHECK(has_record(w, 3, 125, 128));
    CHECK(generate_equations(10, 20).size() == 5);
    CHECK(generate_equations(6, 10).size() == 4);
    for (const auto& r : v) {
      CHECK(r.A + r.B == r.C);
      CHECK(r.A <= r.B);
      CHECK(gcd(r.A, r.B) == 1);
      CHECK(radical(r.A * r.B * r.C) <= 30);
    }
    CHECK_THROWS_AS(generate_equations(5, 100), ArgumentError);
  }

  TEST_CASE("decompositions") {
    auto left = decompose(make_record(16, 3, 19), Side::left_carries_g);
    REQUIRE(!left.s53.empty());
    auto s = left.s53[0];
    CHECK(s.g == 2);
    CHECK(s.w1 == 4);
    CHECK(s.a1 == 1);
    CHECK(!s.x1);
    CHECK(s.b1 == 3);
    CHECK(s.c1 == 19);
    for (const auto& d : left.s53) CHECK(d.holds());

    auto right = decompose(make_record(1, 18, 19), Side::right_carries_g);
    auto it = std::find_if(right.s54.begin(), right.s54.end(),
                           [](const Shape54& x) { return x.g == 2 && x.b1 == 3; });
    REQUIRE(it != right.s54.end());
    CHECK(it->w2 == 1);
    CHECK(it->y2 == 2u);
    for (const auto& d : right.s54) {
      CHECK(d.holds());
      CHECK(primitive_power(d.g).exponent == 1);
    }
    CHECK(decompose(make_record(1, 18, 19), Side::left_carries_g).s53.empty());
  }

  TEST_CASE("pairing solves the exponent system") {
    Shape53 s53{2, 4, 1, std::nullopt, 3, 1u, 19, 1};
    Shape54 s54{1, std::nullopt, 2, 1, 3, 2u, 19, 1};
    auto po = pair_and_solve(s53, s54);
    REQUIRE(po.system);
    CHECK(po.system->gamma == 1);
    CHECK(po.system->x1 == 5);
    CHECK(po.system->x2 == 1);
    auto brute = ref::solve_pair(s53, s54);
    REQUIRE(brute);
    CHECK(brute->alpha == po.system->alpha);
    CHECK(brute->beta == po.system->beta);
    auto c = reconstruct_and_verify(s53, s54, *po.system);
    CHECK(c.status == CandidateStatus::anomalous);
    CHECK(normalize(c.nine) == NineTuple{2, 6, 38, {1, 2, 1}, {5, 1, 1}});

    // 3^1 * 1 + 2 = 5 and 1 + 3 * 2^2 ... (3,6,15)
    Shape53 t53{3, 1, 1, std::nullopt, 2, 1u, 5, 1};
    Shape54 t54{1, std::nullopt, 3, 1, 2, 3u, 5, 2};
    auto tp = pair_and_solve(t53, t54);
    REQUIRE(tp.system);
    CHECK(tp.system->gamma == 1);
    CHECK(tp.system->x1 == 2);
    CHECK(tp.system->x2 == 2);
    CHECK(reconstruct_and_verify(t53, t54, *tp.system).status == CandidateStatus::anomalous);

    Shape54 other{1, std::nullopt, 3, 1, 2, 3u, 7, 1};
    CHECK(pair_and_solve(t53, other).reason == PairReason::base_mismatch);
  }

  TEST_CASE("pairing agrees with a brute-force gamma search") {
    // Every shape pair the kernel solves, the brute force solves the same way.
    for (std::uint64_t y1 = 1; y1 <= 4; ++y1)
      for (std::uint64_t z1 = 1; z1 <= 4; ++z1)
        for (std::uint64_t w1 = 1; w1 <= 4; ++w1)
          for (std::uint64_t y2 = 1; y2 <= 4; ++y2)
            for (std::uint64_t z2 = 1; z2 <= 4; ++z2)
              for (std::uint64_t w2 = 1; w2 <= 4; ++w2)
                for (std::uint64_t x = 1; x <= 3; ++x) {
                  Shape53 s{2, unsigned(w1), 3, unsigned(x), 5, unsigned(y1), 7, unsigned(z1)};
                  Shape54 t{3, unsigned(x + 1), 2, unsigned(w2), 5, unsigned(y2), 7, unsigned(z2)};
                  auto po = pair_and_solve(s, t);
                  auto br = ref::solve_pair(s, t, 512);
                  REQUIRE(po.system.has_value() == br.has_value());
                  if (br) {
                    REQUIRE(po.system->gamma == br->gamma);
                    REQUIRE(po.system->consistent());
                  }
                }
  }

  TEST_CASE("verify_nine statuses") {
    CHECK(verify_nine({3, 6, 15, {2, 1, 1}, {2, 3, 2}}).status == CandidateStatus::anomalous);
    CHECK(verify_nine({7, 49, 98, {7, 3, 3}, {2, 1, 1}}).status == CandidateStatus::type_mismatch);
    CHECK(verify_nine({7, 7, 98, {2, 2, 1}, {6, 7, 3}}).status == CandidateStatus::wrong_count);
    // both solutions are Type A at 2
    CHECK(verify_nine({2, 6, 10, {2, 1, 1}, {6, 2, 2}}).status == CandidateStatus::type_mismatch);
    CHECK(verify_nine({6, 3, 15, {3, 2, 2}, {1, 2, 1}}).status == CandidateStatus::anomalous);
    CHECK_THROWS_AS(verify_nine({3, 6, 15, {1, 1, 1}, {2, 3, 2}}), ArgumentError);
  }

  TEST_CASE("direct search matches the serial reference") {
    for (DirectBounds b : {DirectBounds{1, 5, 5, 3}, DirectBounds{6, 8, 40, 4}}) {
      auto fast = direct_search(b);
      auto slow = ref::direct_search(b);
      CHECK(keys(fast.results) == keys(slow));
      for (const auto& c : fast.results) {
        CHECK(satisfies(c.nine.a, c.nine.b, c.nine.c, c.nine.s1));
        CHECK(satisfies(c.nine.a, c.nine.b, c.nine.c, c.nine.s2));
        CHECK(gcd(c.nine.a, c.nine.b) > 1);
        if (c.status == CandidateStatus::anomalous) CHECK(is_known_anomalous(c.nine));
      }
    }
  }

  TEST_CASE("direct search is deterministic across workers") {
    DirectBounds b{8, 10, 60, 5};
    auto one = direct_search(b, {1});
    auto four = direct_search(b, {4});
    CHECK(keys(one.results) == keys(four.results));
    CHECK(one.stats.candidates == four.stats.candidates);
    CHECK(one.stats.rejected == four.stats.rejected);
    auto found = keys(one.results);
    CHECK(std::find(found.begin(), found.end(), NineTuple{3, 6, 15, {2, 1, 1}, {2, 3, 2}}) !=
          found.end());
  }

  TEST_CASE("checkpoint resume reproduces a fresh run") {
    auto path = (std::filesystem::temp_directory_path() / "expeq_ckpt_test.json").string();
    std::remove(path.c_str());
    DirectBounds b{6, 10, 40, 4};
    auto fresh = direct_search(b);
    SearchOptions opt;
    opt.checkpoint_path = path;
    opt.checkpoint_every = 3;
    auto first = direct_search(b, opt);
    CHECK(keys(first.results) == keys(fresh.results));
    // Resuming from a finished checkpoint does no more work.
    auto again = direct_search(b, opt);
    CHECK(keys(again.results) == keys(fresh.results));
    CHECK(again.stats.work_units == fresh.stats.work_units);
    CHECK_THROWS_AS(direct_search(DirectBounds{6, 10, 41, 4}, opt), ArgumentError);
    std::remove(path.c_str());
  }

  TEST_CASE("pipeline") {
    std::vector<EquationRecord> recs{make_record(16, 3, 19), make_record(1, 18, 19),
                                     make_record(3, 2, 5), make_record(1, 24, 25)};
    auto rep = pipeline_search(recs);
    auto found = keys(rep.results);
    CHECK(std::find(found.begin(), found.end(), NineTuple{2, 6, 38, {1, 2, 1}, {5, 1, 1}}) !=
          found.end());
    CHECK(std::find(found.begin(), found.end(), NineTuple{3, 6, 15, {2, 1, 1}, {2, 3, 2}}) !=
          found.end());
    auto gen = generate_equations(100, 100000);
    auto a = pipeline_search(gen, {1});
    auto b = pipeline_search(gen, {4});
    CHECK(keys(a.results) == keys(b.results));
    for (const auto& c : a.results)
      if (c.status == CandidateStatus::anomalous) CHECK(is_known_anomalous(c.nine));
  }
}
