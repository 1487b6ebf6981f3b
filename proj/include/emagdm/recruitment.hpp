#pragma once

// Manager-recruitment example: 17 candidates scored by 4 experts on two
// interview attributes, together with the published intermediate tables
// used as golden data.

#include <cstddef>
#include <string>
#include <vector>

#include "emagdm/linguistic.hpp"
#include "emagdm/matrix.hpp"
#include "emagdm/pipeline.hpp"

namespace emagdm::recruitment {

inline constexpr std::size_t kCandidates = 17;
inline constexpr std::size_t kExperts = 4;
inline constexpr std::size_t kAttributes = 2;
inline constexpr std::size_t kTerms = 5;

/// Raw scores of experts u1..u4 (alternatives "1".."17", attributes
/// "Panel interview", "1-on-1 interview").
std::vector<DecisionMatrix> decision_matrices();

/// Printed memberships for u1: 17 x 10, Panel terms 1-5 then 1-on-1 terms 1-5.
Matrix printed_memberships();
/// Printed BPAs for u1, same layout.
Matrix printed_bpas();

/// A printed cell that is checked against something other than its literal
/// value (0-based row / column in the 17 x 10 layout).
struct PrintDefect {
  std::size_t row;
  std::size_t col;
  double reference;
  double tolerance;
  std::string note;
};
std::vector<PrintDefect> membership_print_defects();

/// Printed pairwise divergences, 17 x 6, pairs (1,2) (1,3) (1,4) (2,3) (2,4) (3,4).
Matrix printed_pairwise_divergence();
/// The printed "Average" row of the same table.
std::vector<double> printed_pair_averages();

/// Printed 4 x 4 divergence-measure matrix (as printed; not exactly symmetric).
Matrix printed_divergence_matrix();
std::vector<double> printed_expert_averages();
std::vector<double> printed_expert_supports();
std::vector<double> printed_expert_weights();
/// Experts best first (0-based): u3, u4, u2, u1.
std::vector<std::size_t> printed_expert_order();

/// Printed fused Panel / 1-on-1 columns, 17 x 2.
Matrix printed_fused();
std::vector<double> printed_ideal();
/// Printed rank of each candidate (candidates 2 and 7 share rank 12).
std::vector<int> printed_ranks();

/// Configuration selected by calibration against the printed pairwise table.
PipelineConfig calibrated_config();

}  // namespace emagdm::recruitment
