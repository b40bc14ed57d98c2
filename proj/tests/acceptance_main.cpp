// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <cstring>
#include <iostream>

#include "altitude/acceptance.hpp"

int main(int argc, char** argv) {
  altitude::SuiteOptions options;
  options.level = altitude::SuiteLevel::full;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) options.level = altitude::SuiteLevel::quick;
  }
  int failed = 0;
  altitude::run_acceptance(options, [&](const altitude::CriterionResult& r) {
    std::cout << altitude::format_result(r) << std::endl;
    failed += r.pass ? 0 : 1;
  });
  std::cout << (failed == 0 ? "ALL CRITERIA PASS" : std::to_string(failed) + " CRITERIA FAIL") << std::endl;
  return failed == 0 ? 0 : 1;
}
