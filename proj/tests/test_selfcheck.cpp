#include <doctest.h>

#include <sstream>

#include "msm/selfcheck.hpp"

TEST_CASE("self-checks are deterministic for a fixed seed") {
  msm::CheckOptions options;
  options.seed = 7;
  const msm::CheckResult first = msm::run_acceptance_check(2, options);
  const msm::CheckResult second = msm::run_acceptance_check(2, options);
  CHECK(first.passed);
  CHECK(first.worst == second.worst);

  options.seed = 8;
  const msm::CheckResult other = msm::run_acceptance_check(2, options);
  CHECK(other.passed);
  CHECK(other.worst != first.worst);
}

TEST_CASE("a corrupted Q-symbol factor is caught and named") {
  msm::CheckOptions options;
  options.q_symbol_fault = 1e-3;
  const msm::CheckResult result = msm::run_acceptance_check(8, options);
  CHECK(!result.passed);
  CHECK(result.detail.find("Q-symbol") != std::string::npos);
}

TEST_CASE("report printing counts failures") {
  std::vector<msm::CheckResult> results(2);
  results[0].id = 1;
  results[0].name = "alpha";
  results[0].passed = true;
  results[0].worst = 1e-14;
  results[0].tolerance = 1e-10;
  results[1].id = 2;
  results[1].name = "beta";
  results[1].passed = false;
  results[1].worst = 2e-3;
  results[1].tolerance = 1e-8;
  results[1].detail = "who watches the checkers";

  std::ostringstream os;
  const int failures = msm::print_report(os, results, /*include_timing=*/false);
  CHECK(failures == 1);
  CHECK(os.str().find("[PASS] 1. alpha") != std::string::npos);
  CHECK(os.str().find("[FAIL] 2. beta") != std::string::npos);
  CHECK(os.str().find("who watches the checkers") != std::string::npos);

  std::ostringstream os2;
  msm::print_report(os2, results, /*include_timing=*/false);
  CHECK(os.str() == os2.str());
}

TEST_CASE("unknown criterion ids are rejected") {
  CHECK_THROWS_AS(msm::run_acceptance_check(0), std::invalid_argument);
  CHECK_THROWS_AS(msm::run_acceptance_check(11), std::invalid_argument);
}
