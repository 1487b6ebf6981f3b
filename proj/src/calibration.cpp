#include "emagdm/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "emagdm/errors.hpp"

namespace emagdm {

std::string describe(const PipelineConfig& config) {
  std::ostringstream os;
  os << "owa=";
  if (config.owa_scheme == OwaScheme::orness) {
    os << "orness(" << config.owa_orness << ")";
  } else {
    os << to_string(config.owa_scheme);
  }
  os << " base=" << to_string(config.log_base) << " axis=" << to_string(config.wpbl_axis);
  return os.str();
}

std::vector<PipelineConfig> calibration_grid(const PipelineConfig& base) {
  struct Owa {
    OwaScheme scheme;
    double orness;
  };
  const Owa owas[] = {{OwaScheme::uniform, 0.5},  {OwaScheme::linear_descending, 0.5}, {OwaScheme::orness, 0.6},
                      {OwaScheme::orness, 0.7},   {OwaScheme::orness, 0.8},            {OwaScheme::orness, 0.9},
                      {OwaScheme::orness, 0.95}};
  std::vector<PipelineConfig> grid;
  for (auto axis : {WpblAxis::attributes, WpblAxis::alternatives}) {
    for (const auto& o : owas) {
      for (auto b : {LogBase::two, LogBase::e}) {
        PipelineConfig c = base;
        c.owa_scheme = o.scheme;
        c.owa_orness = o.orness;
        c.log_base = b;
        c.wpbl_axis = axis;
        grid.push_back(c);
      }
    }
  }
  return grid;
}

bool ordinal_agreement(std::span<const double> computed, std::span<const double> reference) {
  if (computed.size() != reference.size()) throw DomainError("ordinal comparison needs equal lengths");
  for (std::size_t a = 0; a < reference.size(); ++a) {
    for (std::size_t b = 0; b < reference.size(); ++b) {
      if (reference[a] > reference[b] && computed[a] < computed[b]) return false;
    }
  }
  return true;
}

CalibrationCandidate score_candidate(std::span<const DecisionMatrix> experts, const PipelineConfig& config,
                                     const Matrix& reference, std::span<const double> reference_averages) {
  CalibrationCandidate c;
  c.config = config;
  c.label = describe(config);
  try {
    auto res = estimate_expert_weights(experts, config);
    c.pairwise = res.divergence.pairwise;
  } catch (const Error& e) {
    c.error = e.what();
    return c;
  }
  if (c.pairwise.rows() != reference.rows() || c.pairwise.cols() != reference.cols()) {
    c.error = "shape differs from the reference table";
    return c;
  }
  c.ok = true;
  double total = 0.0;
  for (std::size_t i = 0; i < reference.rows(); ++i) {
    for (std::size_t j = 0; j < reference.cols(); ++j) total += std::abs(c.pairwise(i, j) - reference(i, j));
  }
  c.mae = total / static_cast<double>(reference.rows() * reference.cols());
  c.averages.assign(reference.cols(), 0.0);
  for (std::size_t j = 0; j < reference.cols(); ++j) {
    for (std::size_t i = 0; i < reference.rows(); ++i) c.averages[j] += c.pairwise(i, j);
    c.averages[j] /= static_cast<double>(reference.rows());
    if (j < reference_averages.size()) {
      c.max_average_error = std::max(c.max_average_error, std::abs(c.averages[j] - reference_averages[j]));
    }
  }
  c.numeric_pass = c.mae <= kCalibrationMaeTolerance && c.max_average_error <= kCalibrationAverageTolerance;
  c.ordinal_pass = reference_averages.size() == c.averages.size() && ordinal_agreement(c.averages, reference_averages);
  return c;
}

CalibrationResult calibrate(std::span<const DecisionMatrix> experts, std::span<const PipelineConfig> grid,
                            const Matrix& reference, std::span<const double> reference_averages) {
  if (grid.empty()) throw DomainError("empty calibration grid");
  CalibrationResult r;
  bool found = false;
  for (const auto& cfg : grid) {
    r.candidates.push_back(score_candidate(experts, cfg, reference, reference_averages));
    const auto& c = r.candidates.back();
    if (c.ok && (!found || c.mae < r.candidates[r.best].mae)) {
      r.best = r.candidates.size() - 1;
      found = true;
    }
  }
  if (!found) throw DegenerateError("no calibration candidate could be evaluated");
  return r;
}

}  // namespace emagdm
