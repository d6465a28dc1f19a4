#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace msm {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double worst = 0.0;      // worst observed error
  double tolerance = 0.0;  // pinned threshold
  double seconds = 0.0;
  std::string detail;  // failure detail, empty when passed
};

struct CheckOptions {
  std::uint64_t seed = 42;
  // Test hook: relative perturbation applied to the Q-symbol scale factor
  // inside check 8, to prove the suite catches a corrupted factor table.
  double q_symbol_fault = 0.0;
};

// Runs one criterion (1-based id) or all of them.
CheckResult run_acceptance_check(int id, const CheckOptions& options = {});
std::vector<CheckResult> run_acceptance_checks(const CheckOptions& options = {});

// One line per criterion; returns the number of failures. Timing is optional
// so the report bytes can be compared across runs.
int print_report(std::ostream& os, const std::vector<CheckResult>& results,
                 bool include_timing = true);

}  // namespace msm
