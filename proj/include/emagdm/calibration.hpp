#pragma once

// Scores pipeline configurations against a printed pairwise-divergence table
// and picks the closest one.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "emagdm/linguistic.hpp"
#include "emagdm/matrix.hpp"
#include "emagdm/pipeline.hpp"

namespace emagdm {

inline constexpr double kCalibrationMaeTolerance = 5e-4;
inline constexpr double kCalibrationAverageTolerance = 2e-4;

struct CalibrationCandidate {
  PipelineConfig config;
  std::string label;
  bool ok = false;
  std::string error;
  Matrix pairwise;
  std::vector<double> averages;
  double mae = 0.0;
  double max_average_error = 0.0;
  /// MAE and every pair average within tolerance.
  bool numeric_pass = false;
  /// No pair that the reference orders strictly is reversed.
  bool ordinal_pass = false;
};

struct CalibrationResult {
  std::vector<CalibrationCandidate> candidates;
  /// Index of the smallest-MAE candidate.
  std::size_t best = 0;
};

/// "owa=orness(0.95) base=2 axis=attributes"
std::string describe(const PipelineConfig& config);

/// OWA in {uniform, linear-descending, orness 0.6, 0.7, 0.8, 0.9, 0.95} x log
/// base {2, e} x WPBl axis {attributes, alternatives}; other fields from `base`.
std::vector<PipelineConfig> calibration_grid(const PipelineConfig& base);

/// True when no pair (a, b) with reference[a] > reference[b] has
/// computed[a] < computed[b]. Ties in the reference impose no constraint.
bool ordinal_agreement(std::span<const double> computed, std::span<const double> reference);

CalibrationCandidate score_candidate(std::span<const DecisionMatrix> experts, const PipelineConfig& config,
                                     const Matrix& reference, std::span<const double> reference_averages);

CalibrationResult calibrate(std::span<const DecisionMatrix> experts, std::span<const PipelineConfig> grid,
                            const Matrix& reference, std::span<const double> reference_averages);

}  // namespace emagdm
