#pragma once

#include <string>
#include <vector>

namespace acflab {

struct CriterionResult {
  int id = 0;
  std::string title;
  std::string anchor;     // the statement being checked
  bool passed = false;
  std::string detail;     // measured worst cases
  std::string tolerance;
  double seconds = 0.0;
};

struct CriterionInfo {
  int id;
  const char* title;
  const char* anchor;
  const char* tolerance;
};

/// The acceptance criteria in order, ids 1..12.
const std::vector<CriterionInfo>& criteria();

/// Runs one criterion. Exceptions from the numerics are caught and reported
/// as a failure with the message in detail.
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_all_criteria();

}  // namespace acflab
