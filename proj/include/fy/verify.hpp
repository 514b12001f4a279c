#pragma once

#include <string>
#include <vector>

namespace fy {

struct CheckResult {
  std::string id;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

/// Value-level checks (criteria 01..11) under the current worker count.
VerifyReport run_core_checks();

/// Core checks plus the determinism check (12): the rendered core report must
/// be byte-identical across repeated runs and across 1 vs 8 workers.
VerifyReport run_verification();

std::string render(const VerifyReport& report);

}  // namespace fy
