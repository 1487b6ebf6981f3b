#include "emagdm/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "emagdm/errors.hpp"

namespace emagdm {

// ---------------------------------------------------------------------------
// OWA weights

namespace {

std::vector<double> max_entropy_weights(std::size_t l, double log_h) {
  std::vector<double> w(l);
  const double top = log_h > 0 ? log_h * static_cast<double>(l - 1) : 0.0;
  double s = 0.0;
  for (std::size_t f = 0; f < l; ++f) {
    w[f] = std::exp(log_h * static_cast<double>(l - 1 - f) - top);
    s += w[f];
  }
  for (auto& x : w) x /= s;
  return w;
}

double orness_of(std::span<const double> w) {
  const std::size_t l = w.size();
  if (l < 2) return 0.5;
  double o = 0.0;
  for (std::size_t f = 0; f < l; ++f) o += static_cast<double>(l - 1 - f) / static_cast<double>(l - 1) * w[f];
  return o;
}

}  // namespace

std::string OwaWeights::tag() const {
  if (scheme != OwaScheme::orness) return to_string(scheme);
  std::ostringstream os;
  os << "orness(" << target_orness << ")";
  return os.str();
}

double OwaWeights::orness() const { return orness_of(values); }

OwaWeights owa_weights(std::size_t terms, OwaScheme scheme, double orness) {
  if (terms < 1) throw DomainError("OWA weights need l >= 1");
  OwaWeights out;
  out.scheme = scheme;
  const double l = static_cast<double>(terms);
  switch (scheme) {
    case OwaScheme::uniform:
      out.values.assign(terms, 1.0 / l);
      break;
    case OwaScheme::linear_descending:
      out.values.resize(terms);
      for (std::size_t f = 1; f <= terms; ++f) {
        out.values[f - 1] = 2.0 * (l - static_cast<double>(f) + 1.0) / (l * (l + 1.0));
      }
      break;
    case OwaScheme::orness: {
      if (!(orness > 0.0 && orness < 1.0)) throw DomainError("orness must lie in (0, 1)");
      out.target_orness = orness;
      if (terms == 1 || orness == 0.5) {
        out.values.assign(terms, 1.0 / l);
        break;
      }
      // Maximum-entropy weights are w_f proportional to h^(l-f); orness grows
      // monotonically in log h.
      double lo = -80.0;
      double hi = 80.0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (orness_of(max_entropy_weights(terms, mid)) < orness) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      out.values = max_entropy_weights(terms, 0.5 * (lo + hi));
      break;
    }
  }
  return out;
}

std::string to_string(OwaScheme scheme) {
  switch (scheme) {
    case OwaScheme::uniform:
      return "uniform";
    case OwaScheme::linear_descending:
      return "linear-descending";
    case OwaScheme::orness:
      return "orness";
  }
  return "?";
}

OwaScheme parse_owa_scheme(std::string_view text) {
  if (text == "uniform") return OwaScheme::uniform;
  if (text == "linear-descending") return OwaScheme::linear_descending;
  if (text == "orness") return OwaScheme::orness;
  throw DomainError("unknown OWA scheme \"" + std::string(text) + "\"");
}

// ---------------------------------------------------------------------------
// Belief and plausibility

Matrix ordered_weighted_belief(const BpaTensor& tensor, const OwaWeights& w) {
  if (w.values.size() != tensor.terms()) {
    throw DomainError("OWA weight length " + std::to_string(w.values.size()) + " does not match " +
                      std::to_string(tensor.terms()) + " linguistic terms");
  }
  Matrix bel(tensor.alternatives(), tensor.attributes());
  std::vector<std::size_t> order(tensor.terms());
  for (std::size_t i = 0; i < tensor.alternatives(); ++i) {
    for (std::size_t j = 0; j < tensor.attributes(); ++j) {
      const auto masses = tensor.block(i, j);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return masses[a] > masses[b]; });
      double s = 0.0;
      for (std::size_t f = 0; f < order.size(); ++f) s += w.values[f] * masses[order[f]];
      bel(i, j) = s;
    }
  }
  return bel;
}

std::vector<Matrix> ordered_weighted_plausibility(std::span<const Matrix> beliefs) {
  if (beliefs.size() < 2) throw DomainError("plausibility needs at least 2 experts");
  const auto p = beliefs.front().rows();
  const auto q = beliefs.front().cols();
  for (const auto& b : beliefs) {
    if (b.rows() != p || b.cols() != q) throw DomainError("belief matrices differ in shape");
  }
  std::vector<Matrix> pls(beliefs.size(), Matrix(p, q));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      double total = 0.0;
      for (const auto& b : beliefs) total += b(i, j);
      if (total <= 0.0) {
        throw DegenerateError("degenerate cell (alternative " + std::to_string(i + 1) + ", attribute " +
                              std::to_string(j + 1) + "): every expert's belief is zero");
      }
      for (std::size_t k = 0; k < beliefs.size(); ++k) pls[k](i, j) = beliefs[k](i, j) / total;
    }
  }
  return pls;
}

// ---------------------------------------------------------------------------
// WPBl and divergences

std::string to_string(WpblAxis axis) { return axis == WpblAxis::attributes ? "attributes" : "alternatives"; }

WpblAxis parse_wpbl_axis(std::string_view text) {
  if (text == "attributes") return WpblAxis::attributes;
  if (text == "alternatives") return WpblAxis::alternatives;
  throw DomainError("unknown WPBl axis \"" + std::string(text) + "\"");
}

Matrix expert_wpbl(const Matrix& bel, const Matrix& pl, WpblAxis axis) {
  if (bel.rows() != pl.rows() || bel.cols() != pl.cols()) throw DomainError("belief / plausibility shape mismatch");
  Matrix out(bel.rows(), bel.cols());
  if (axis == WpblAxis::attributes) {
    for (std::size_t i = 0; i < bel.rows(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < bel.cols(); ++j) s += bel(i, j) + pl(i, j);
      if (s <= 0.0) throw DegenerateError("zero Bel + Pl total for alternative " + std::to_string(i + 1));
      for (std::size_t j = 0; j < bel.cols(); ++j) out(i, j) = (bel(i, j) + pl(i, j)) / s;
    }
  } else {
    for (std::size_t j = 0; j < bel.cols(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < bel.rows(); ++i) s += bel(i, j) + pl(i, j);
      if (s <= 0.0) throw DegenerateError("zero Bel + Pl total for attribute " + std::to_string(j + 1));
      for (std::size_t i = 0; i < bel.rows(); ++i) out(i, j) = (bel(i, j) + pl(i, j)) / s;
    }
  }
  return out;
}

std::vector<double> pairwise_divergence(const Matrix& wpbl_a, const Matrix& wpbl_b, WpblAxis axis,
                                        const WeightVector& pair_weights, LogBase base) {
  if (wpbl_a.rows() != wpbl_b.rows() || wpbl_a.cols() != wpbl_b.cols()) {
    throw DomainError("WPBl matrices differ in shape");
  }
  if (pair_weights.size() != 2) throw DomainError("pair weights must have length 2");
  const std::size_t p = wpbl_a.rows();
  std::vector<double> out(p, 0.0);
  if (axis == WpblAxis::attributes) {
    for (std::size_t i = 0; i < p; ++i) {
      const std::span<const double> rows[] = {wpbl_a.row(i), wpbl_b.row(i)};
      double s = 0.0;
      for (double t : weighted_divergence_terms(rows, pair_weights, {}, base)) s += t;
      out[i] = std::max(0.0, s);
    }
  } else {
    for (std::size_t j = 0; j < wpbl_a.cols(); ++j) {
      const auto ca = wpbl_a.column(j);
      const auto cb = wpbl_b.column(j);
      const std::span<const double> rows[] = {ca, cb};
      const auto terms = weighted_divergence_terms(rows, pair_weights, {}, base);
      for (std::size_t i = 0; i < p; ++i) out[i] += terms[i];
    }
  }
  return out;
}

std::string to_string(PairAggregation agg) { return agg == PairAggregation::mean ? "mean" : "sum"; }

PairAggregation parse_pair_aggregation(std::string_view text) {
  if (text == "mean") return PairAggregation::mean;
  if (text == "sum") return PairAggregation::sum;
  throw DomainError("unknown pair aggregation \"" + std::string(text) + "\"");
}

std::vector<std::pair<std::size_t, std::size_t>> expert_pairs(std::size_t experts) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < experts; ++a) {
    for (std::size_t b = a + 1; b < experts; ++b) pairs.emplace_back(a, b);
  }
  return pairs;
}

DivergenceMatrix divergence_matrix(Matrix pairwise, std::size_t experts, PairAggregation agg) {
  DivergenceMatrix dm;
  dm.pairs = expert_pairs(experts);
  if (pairwise.cols() != dm.pairs.size()) {
    throw DomainError("expected " + std::to_string(dm.pairs.size()) + " expert-pair columns, got " +
                      std::to_string(pairwise.cols()));
  }
  dm.aggregate = Matrix(experts, experts, 0.0);
  const double p = static_cast<double>(pairwise.rows());
  for (std::size_t c = 0; c < dm.pairs.size(); ++c) {
    double s = 0.0;
    for (std::size_t i = 0; i < pairwise.rows(); ++i) s += pairwise(i, c);
    if (agg == PairAggregation::mean && p > 0) s /= p;
    const auto [a, b] = dm.pairs[c];
    dm.aggregate(a, b) = s;
    dm.aggregate(b, a) = s;
  }
  dm.pairwise = std::move(pairwise);
  return dm;
}

// ---------------------------------------------------------------------------
// Expert weights, fusion, ranking

std::string to_string(AverageConvention c) { return c == AverageConvention::divide_by_k ? "divide-by-k" : "sum"; }

AverageConvention parse_average_convention(std::string_view text) {
  if (text == "divide-by-k") return AverageConvention::divide_by_k;
  if (text == "sum") return AverageConvention::sum;
  throw DomainError("unknown average convention \"" + std::string(text) + "\"");
}

std::string to_string(ZeroDivergencePolicy p) { return p == ZeroDivergencePolicy::error ? "error" : "share"; }

ZeroDivergencePolicy parse_zero_divergence_policy(std::string_view text) {
  if (text == "error") return ZeroDivergencePolicy::error;
  if (text == "share") return ZeroDivergencePolicy::share;
  throw DomainError("unknown zero-divergence policy \"" + std::string(text) + "\"");
}

ExpertWeights expert_weights(const Matrix& dmm, AverageConvention convention, ZeroDivergencePolicy policy) {
  const std::size_t k = dmm.rows();
  if (k < 2 || dmm.cols() != k) throw DomainError("divergence matrix must be square with at least 2 experts");
  ExpertWeights ew;
  ew.averages.assign(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(dmm(i, j) >= 0.0)) throw DomainError("divergence matrix entries must be nonnegative");
      s += dmm(i, j);
    }
    ew.averages[j] = convention == AverageConvention::divide_by_k ? s / static_cast<double>(k) : s;
  }

  std::vector<std::size_t> zero;
  for (std::size_t j = 0; j < k; ++j) {
    if (ew.averages[j] == 0.0) zero.push_back(j);
  }
  ew.supports.assign(k, 0.0);
  ew.weights.assign(k, 0.0);
  if (!zero.empty()) {
    if (policy == ZeroDivergencePolicy::error) {
      throw DegenerateError("expert " + std::to_string(zero.front() + 1) +
                            " has zero average divergence; support 1/0 is undefined");
    }
    ew.zero_divergence = true;
    for (auto j : zero) ew.weights[j] = 1.0 / static_cast<double>(zero.size());
    return ew;
  }
  double total = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    ew.supports[j] = 1.0 / ew.averages[j];
    total += ew.supports[j];
  }
  for (std::size_t j = 0; j < k; ++j) ew.weights[j] = ew.supports[j] / total;
  return ew;
}

Matrix fuse(std::span<const Matrix> matrices, std::span<const double> weights) {
  if (matrices.empty()) throw DomainError("nothing to fuse");
  if (matrices.size() != weights.size()) throw DomainError("fusion needs one weight per matrix");
  const auto p = matrices.front().rows();
  const auto q = matrices.front().cols();
  Matrix out(p, q, 0.0);
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    if (matrices[k].rows() != p || matrices[k].cols() != q) throw DomainError("fusion shape mismatch");
    if (!(weights[k] >= 0.0)) throw DomainError("fusion weights must be nonnegative");
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < q; ++j) out(i, j) += weights[k] * matrices[k](i, j);
    }
  }
  return out;
}

RankingResult rank(const Matrix& fused) {
  if (fused.rows() < 1 || fused.cols() < 1) throw DomainError("ranking needs a nonempty matrix");
  RankingResult r;
  r.fused = fused;
  r.ideal.assign(fused.cols(), 0.0);
  for (std::size_t j = 0; j < fused.cols(); ++j) {
    double best = fused(0, j);
    for (std::size_t i = 1; i < fused.rows(); ++i) best = std::max(best, fused(i, j));
    r.ideal[j] = best;
  }
  double norm2 = 0.0;
  for (double x : r.ideal) norm2 += x * x;
  if (norm2 <= 0.0) throw DegenerateError("degenerate ranking: the ideal solution is all zero");
  const double norm = std::sqrt(norm2);
  r.scores.assign(fused.rows(), 0.0);
  for (std::size_t i = 0; i < fused.rows(); ++i) {
    double dot = 0.0;
    for (std::size_t j = 0; j < fused.cols(); ++j) dot += fused(i, j) * r.ideal[j];
    r.scores[i] = dot / norm;
  }
  r.order.resize(fused.rows());
  std::iota(r.order.begin(), r.order.end(), std::size_t{0});
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](std::size_t a, std::size_t b) { return r.scores[a] > r.scores[b]; });
  return r;
}

// ---------------------------------------------------------------------------
// Whole pipeline

void require_conformable(std::span<const DecisionMatrix> experts) {
  if (experts.size() < 2) throw DomainError("MAGDM requires ≥ 2 experts");
  const auto& first = experts.front();
  for (const auto& e : experts) {
    e.validate();
    if (e.alternatives != first.alternatives) {
      throw DomainError("expert '" + e.expert_id + "' lists different alternatives than '" + first.expert_id + "'");
    }
    if (e.attributes != first.attributes) {
      throw DomainError("expert '" + e.expert_id + "' lists different attributes than '" + first.expert_id + "'");
    }
  }
}

PipelineResult estimate_expert_weights(std::span<const DecisionMatrix> experts, const PipelineConfig& config) {
  require_conformable(experts);
  if (config.wpbl_axis == WpblAxis::attributes && experts.front().attribute_count() < 2) {
    throw DomainError("wpbl_axis \"attributes\" needs >= 2 attributes; use \"alternatives\" for a single attribute");
  }
  PipelineResult res;
  res.owa = owa_weights(config.membership.terms, config.owa_scheme, config.owa_orness);
  const WeightVector pair_weights(config.pair_weights);

  for (const auto& e : experts) {
    res.normalized.push_back(normalize_decision_matrix(e));
    res.memberships.push_back(membership_matrix(res.normalized.back(), config.membership));
    res.tensors.push_back(bpa_tensor(res.memberships.back()));
    res.beliefs.push_back(ordered_weighted_belief(res.tensors.back(), res.owa));
  }
  res.plausibilities = ordered_weighted_plausibility(res.beliefs);
  for (std::size_t k = 0; k < experts.size(); ++k) {
    res.wpbls.push_back(expert_wpbl(res.beliefs[k], res.plausibilities[k], config.wpbl_axis));
  }

  const auto pairs = expert_pairs(experts.size());
  Matrix pairwise(experts.front().alternative_count(), pairs.size());
  for (std::size_t c = 0; c < pairs.size(); ++c) {
    const auto column = pairwise_divergence(res.wpbls[pairs[c].first], res.wpbls[pairs[c].second], config.wpbl_axis,
                                            pair_weights, config.log_base);
    for (std::size_t i = 0; i < column.size(); ++i) pairwise(i, c) = column[i];
  }
  res.divergence = divergence_matrix(std::move(pairwise), experts.size(), config.pair_aggregation);
  res.weights = expert_weights(res.divergence.aggregate, config.average_convention, config.zero_divergence);
  return res;
}

PipelineResult run_pipeline(std::span<const DecisionMatrix> experts, const PipelineConfig& config) {
  auto res = estimate_expert_weights(experts, config);
  std::vector<Matrix> normalized;
  normalized.reserve(res.normalized.size());
  for (const auto& n : res.normalized) normalized.push_back(n.values);
  res.ranking = rank(fuse(normalized, res.weights.weights));
  return res;
}

}  // namespace emagdm
