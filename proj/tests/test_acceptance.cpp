#include "altitude/acceptance.hpp"
#include "doctest.h"

using namespace altitude;

TEST_CASE("criterion 1 passes on a correct build") {
  SuiteOptions opt;
  opt.only = {1};
  const auto results = run_acceptance(opt);
  REQUIRE(results.size() == 1);
  CHECK(results[0].id == 1);
  CHECK(results[0].pass);
}

TEST_CASE("an off-by-one trail length is caught and named") {
  SuiteOptions opt;
  opt.only = {1};
  opt.fault = Fault::trail_off_by_one;
  const auto results = run_acceptance(opt);
  REQUIRE(results.size() == 1);
  CHECK_FALSE(results[0].pass);
  CHECK(format_result(results[0]).rfind("FAIL criterion 1", 0) == 0);
}

TEST_CASE("report callback sees each selected criterion") {
  SuiteOptions opt;
  opt.only = {7, 8};
  std::vector<int> seen;
  run_acceptance(opt, [&](const CriterionResult& r) { seen.push_back(r.id); });
  CHECK(seen == std::vector<int>{7, 8});
}
