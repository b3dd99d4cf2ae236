#pragma once

// Acceptance checks, shared by `expeq verify-paper` and the acceptance test.

#include <cstdint>
#include <string>
#include <vector>

namespace expeq::verify {

struct Outcome {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;
};

struct Options {
  std::uint64_t seed = 0x5eed2026;
};

inline constexpr int kCriteria = 9;

// Runs criterion `id` (1-9). Exceptions are caught and reported as failures.
Outcome run(int id, const Options& opt = {});
std::vector<Outcome> run_all(const Options& opt = {});

std::string format(const Outcome& o);

}  // namespace expeq::verify
