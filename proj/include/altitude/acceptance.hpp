#pragma once

#include <functional>
#include <string>
#include <vector>

namespace altitude {

enum class SuiteLevel { quick, full };

// Deliberate defects for checking that the suite notices them.
enum class Fault { none, trail_off_by_one };

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  SuiteLevel level = SuiteLevel::quick;
  int jobs = 1;
  Fault fault = Fault::none;
  std::vector<int> only;  // criterion ids to run; empty runs all
};

// Runs criteria 1..8 in order, calling `report` after each one.
std::vector<CriterionResult> run_acceptance(const SuiteOptions& options,
                                            const std::function<void(const CriterionResult&)>& report = {});

std::string format_result(const CriterionResult& r);

}  // namespace altitude
