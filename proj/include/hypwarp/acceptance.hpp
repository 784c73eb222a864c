#pragma once

#include <iosfwd>

#include "hypwarp/report.hpp"

namespace hypwarp {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  json details;
};

struct SuiteResult {
  bool all_pass = false;
  std::vector<CriterionResult> criteria;
  json report;  // full machine-readable summary (no timing data, reproducible)
};

// Runs every acceptance criterion at its pinned tolerance, one progress line
// per criterion on `progress` when non-null. Deterministic for a fixed seed.
SuiteResult run_acceptance_suite(std::uint64_t seed, std::ostream* progress);

}  // namespace hypwarp
