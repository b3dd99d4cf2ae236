#include <iostream>

#include "verify.hpp"

int main() {
  bool all = true;
  for (int id = 1; id <= expeq::verify::kCriteria; ++id) {
    auto o = expeq::verify::run(id);
    std::cout << expeq::verify::format(o) << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
