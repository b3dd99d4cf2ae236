#pragma once

#include <stdexcept>
#include <string>

namespace expeq {

// Bad arguments or violated preconditions. Maps to CLI exit code 1 or 2.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mathematical invariant that must hold for every real input failed.
// Indicates a library bug; maps to CLI exit code 3.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace expeq
