#pragma once

#include <string>
#include <vector>

namespace subdiff {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// Measured quantities behind the verdict.
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 10;

/// Runs one criterion (1..kCriterionCount). Throws ConfigError otherwise.
/// The runtime budget is part of the verdict.
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_acceptance();

/// "PASS  3  temporal improvement by smoothing ... [1.20 s]"
std::string format_result(const CriterionResult& r);

} // namespace subdiff
