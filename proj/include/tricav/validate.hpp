#pragma once

// Self-contained invariant suite behind `tricav validate`.

#include <optional>
#include <string>
#include <vector>

namespace tricav {

struct CheckResult {
  std::string module;
  std::string name;
  double error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct ValidationOptions {
  /// Test hook: replaces every tolerance, so a negative value fails everything.
  std::optional<double> tolerance_override;
};

std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

}  // namespace tricav
