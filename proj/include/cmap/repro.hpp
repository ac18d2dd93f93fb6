#pragma once

#include <string>
#include <vector>

namespace cmap::repro {

// One end-to-end reproduction check.  Each has a hard wall-clock budget;
// overrunning it is a failure, not a warning.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string detail;  // one line: the numbers that decided pass/fail
};

inline constexpr int kNumCriteria = 10;

// id in [1, kNumCriteria].  jobs caps worker threads where a check is
// parallelizable; results are independent of it.
CriterionResult run_criterion(int id, int jobs);
std::vector<CriterionResult> run_all(int jobs);

}  // namespace cmap::repro
