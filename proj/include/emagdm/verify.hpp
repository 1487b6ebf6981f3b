#pragma once

// Recomputes the recruitment example and compares every stage with the
// published numbers.

#include <string>
#include <vector>

#include "emagdm/pipeline.hpp"

namespace emagdm {

struct Check {
  /// "1".."7", or "4-e2e" / "7-e2e" for informational lines.
  std::string id;
  std::string name;
  /// Largest observed deviation (0 for purely ordinal checks).
  double delta = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  /// Informational lines never affect the overall verdict.
  bool informational = false;
  std::string detail;
};

struct VerifyReport {
  PipelineConfig config;
  std::string calibration_best;
  std::vector<Check> checks;

  bool all_pass() const;
};

VerifyReport verify_paper(const PipelineConfig& config);

}  // namespace emagdm
