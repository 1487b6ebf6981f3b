#pragma once

// KL, Jensen-Shannon, generalized JS and the belief divergences built on
// WPBl distributions (BJS, weighted, generalized weighted).

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emagdm/evidence.hpp"

namespace emagdm {

enum class LogBase { two, e };

double log_in(double x, LogBase base);
std::string to_string(LogBase base);
/// Accepts "2" or "e". Throws DomainError otherwise.
LogBase parse_log_base(std::string_view text);

/// Nonnegative values summing to one (tolerance 1e-9).
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// Same invariants as ProbabilityVector; used as mixing weights.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> values);
  static WeightVector uniform(std::size_t n);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

double entropy(std::span<const double> p, LogBase base);

/// Requires b[i] = 0 => a[i] = 0; throws DivergenceUndefinedError otherwise.
double kl(const ProbabilityVector& a, const ProbabilityVector& b, LogBase base);
double js(const ProbabilityVector& a, const ProbabilityVector& b, LogBase base);
double generalized_js(std::span<const ProbabilityVector> dists, const WeightVector& w, LogBase base);

/// Per-proposition contributions of the weighted belief divergence
///
///   sum_i w_i * (P_i(j) / c_j) * log(P_i(j) / sum_k w_k P_k(j))
///
/// over rows P_1..P_p (all of equal length). Terms are accumulated in
/// descending-value order per proposition (ties by row index), each value
/// carrying its own weight. `cardinalities` may be empty (all ones).
/// 0 * log(0 / x) is taken as 0.
std::vector<double> weighted_divergence_terms(std::span<const std::span<const double>> rows, const WeightVector& w,
                                              std::span<const double> cardinalities, LogBase base);

double bjs(const MassFunction& m1, const MassFunction& m2, std::span<const Subset> propositions, LogBase base);

/// Requires |w| = 2. With w = (1/2, 1/2) equals bjs.
double weighted_div(const MassFunction& m1, const MassFunction& m2, std::span<const Subset> propositions,
                    const WeightVector& w, LogBase base);

/// Generalized weighted divergence over p >= 2 mass functions, with each
/// proposition's term scaled by 1 / |A_j|.
double generalized_weighted_div(std::span<const MassFunction* const> ms, std::span<const Subset> propositions,
                                const WeightVector& w, LogBase base);

}  // namespace emagdm
