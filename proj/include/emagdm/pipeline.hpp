#pragma once

// Steps 2-10: ordered weighted belief / plausibility, per-alternative expert
// divergences, the divergence-measure matrix, expert weights, fusion and
// ideal-solution ranking.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "emagdm/divergence.hpp"
#include "emagdm/linguistic.hpp"
#include "emagdm/matrix.hpp"

namespace emagdm {

enum class OwaScheme { uniform, linear_descending, orness };

struct OwaWeights {
  std::vector<double> values;
  OwaScheme scheme = OwaScheme::uniform;
  /// Requested orness (orness scheme only).
  double target_orness = 0.5;

  /// "uniform", "linear-descending" or "orness(0.95)".
  std::string tag() const;
  /// sum_f (l - f) / (l - 1) * w_f
  double orness() const;
};

/// uniform: 1/l; linear-descending: 2(l-f+1)/(l(l+1)); orness(theta): the
/// maximum-entropy weights with the given orness, theta in (0, 1).
OwaWeights owa_weights(std::size_t terms, OwaScheme scheme, double orness = 0.5);

std::string to_string(OwaScheme scheme);
OwaScheme parse_owa_scheme(std::string_view text);

/// p x q matrix of OWA-aggregated masses for one expert. Each cell's l
/// masses are sorted descending (ties by term index) before weighting.
Matrix ordered_weighted_belief(const BpaTensor& tensor, const OwaWeights& w);

/// Pl_k = Bel_k / sum over experts of Bel, cell by cell. Needs >= 2 experts;
/// throws DegenerateError naming the cell when the cross-expert sum is 0.
std::vector<Matrix> ordered_weighted_plausibility(std::span<const Matrix> beliefs);

/// Which index the Bel + Pl values of one expert are normalized over.
///  attributes:   per alternative, a distribution over the q attributes;
///  alternatives: per attribute, a distribution over the p alternatives.
enum class WpblAxis { attributes, alternatives };

std::string to_string(WpblAxis axis);
WpblAxis parse_wpbl_axis(std::string_view text);

/// p x q matrix of WPBl values for one expert, normalized along `axis`.
Matrix expert_wpbl(const Matrix& bel, const Matrix& pl, WpblAxis axis);

/// Divergence between two experts for every alternative (one column of the
/// pairwise table). attributes axis: weighted divergence between the two
/// experts' attribute distributions of that alternative. alternatives axis:
/// the alternative's own summands, added over attributes.
std::vector<double> pairwise_divergence(const Matrix& wpbl_a, const Matrix& wpbl_b, WpblAxis axis,
                                        const WeightVector& pair_weights, LogBase base);

enum class PairAggregation { mean, sum };

std::string to_string(PairAggregation agg);
PairAggregation parse_pair_aggregation(std::string_view text);

struct DivergenceMatrix {
  /// p x (k(k-1)/2); column c belongs to pairs[c].
  Matrix pairwise;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  /// k x k, symmetric with zero diagonal.
  Matrix aggregate;
};

/// Expert pairs (a, b), a < b, in lexicographic order.
std::vector<std::pair<std::size_t, std::size_t>> expert_pairs(std::size_t experts);

DivergenceMatrix divergence_matrix(Matrix pairwise, std::size_t experts, PairAggregation agg);

enum class AverageConvention { divide_by_k, sum };
enum class ZeroDivergencePolicy { error, share };

std::string to_string(AverageConvention c);
AverageConvention parse_average_convention(std::string_view text);
std::string to_string(ZeroDivergencePolicy p);
ZeroDivergencePolicy parse_zero_divergence_policy(std::string_view text);

struct ExpertWeights {
  std::vector<double> averages;
  /// 1 / average; 0 for experts handled by the share policy.
  std::vector<double> supports;
  std::vector<double> weights;
  /// Set when some average was zero and the share policy assigned weights.
  bool zero_divergence = false;
};

/// Averages are column sums of `dmm` (divided by k under divide_by_k),
/// supports their reciprocals, weights the normalized supports. A zero
/// average either throws DegenerateError or, under `share`, splits the
/// whole weight equally among the zero-average experts.
ExpertWeights expert_weights(const Matrix& dmm, AverageConvention convention = AverageConvention::divide_by_k,
                             ZeroDivergencePolicy policy = ZeroDivergencePolicy::error);

/// Elementwise sum_k w_k * Y_k.
Matrix fuse(std::span<const Matrix> matrices, std::span<const double> weights);

struct RankingResult {
  Matrix fused;
  std::vector<double> ideal;
  std::vector<double> scores;
  /// Alternative indices, best first; ties keep the lower index first.
  std::vector<std::size_t> order;
};

/// Ideal solution x+ = column maxima, score = (y_i . x+) / |x+|.
RankingResult rank(const Matrix& fused);

struct PipelineConfig {
  MembershipOptions membership;
  OwaScheme owa_scheme = OwaScheme::orness;
  double owa_orness = 0.95;
  LogBase log_base = LogBase::two;
  std::vector<double> pair_weights = {0.5, 0.5};
  WpblAxis wpbl_axis = WpblAxis::attributes;
  PairAggregation pair_aggregation = PairAggregation::mean;
  AverageConvention average_convention = AverageConvention::divide_by_k;
  ZeroDivergencePolicy zero_divergence = ZeroDivergencePolicy::error;
};

struct PipelineResult {
  std::vector<DecisionMatrix> normalized;
  std::vector<MembershipMatrix> memberships;
  std::vector<BpaTensor> tensors;
  OwaWeights owa;
  std::vector<Matrix> beliefs;
  std::vector<Matrix> plausibilities;
  std::vector<Matrix> wpbls;
  DivergenceMatrix divergence;
  ExpertWeights weights;
  RankingResult ranking;
};

/// Checks that all experts share alternative / attribute labels and shape.
void require_conformable(std::span<const DecisionMatrix> experts);

/// Steps 1-9: everything up to and including the expert weights.
PipelineResult estimate_expert_weights(std::span<const DecisionMatrix> experts, const PipelineConfig& config);

/// Steps 1-10.
PipelineResult run_pipeline(std::span<const DecisionMatrix> experts, const PipelineConfig& config);

}  // namespace emagdm
