// One line per acceptance criterion; exit status 1 if any fails.
#include <cstdlib>
#include <iostream>
#include <string>

#include "specdist/acceptance.hpp"

int main(int argc, char** argv) {
  specdist::AcceptanceOptions opt;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--inject-wrong-theta") opt.inject_wrong_theta = true;
    else if (a == "--criterion" && i + 1 < argc) only = std::atoi(argv[++i]);
    else {
      std::cerr << "usage: acceptance [--criterion K] [--inject-wrong-theta]\n";
      return 2;
    }
  }
  int failed = 0;
  for (int id = 1; id <= specdist::criterion_count; ++id) {
    if (only && id != only) continue;
    const auto r = specdist::run_criterion(id, opt);
    std::cout << specdist::format_result(r) << std::endl;
    failed += !r.passed;
  }
  std::cout << (failed ? "acceptance: " + std::to_string(failed) + " failed" : "acceptance: all passed")
            << std::endl;
  return failed ? 1 : 0;
}
