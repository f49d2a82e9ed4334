#pragma once

#include <string>
#include <vector>

#include "qpgate/experiments.hpp"

namespace qpg {

struct CheckResult {
  std::string name;
  std::string module_name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool config_valid = true;
  std::string config_error;
  bool all_passed = false;
  bool quick = false;
};

/// Runs every module invariant plus the eight-state truth table at the
/// configured parameters. quick = true skips the long Lindblad-backed checks
/// (they stay listed in the coverage table as skipped).
ValidationReport run_validation_suite(const RunConfig& cfg, bool quick = false);

/// JSON with one entry per check (name, status, measured value, threshold)
/// and a per-module coverage checklist mapping each invariant to the checks
/// that exercise it.
std::string validation_report_json(const ValidationReport& report);

}  // namespace qpg
