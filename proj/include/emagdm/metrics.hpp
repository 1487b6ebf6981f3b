#pragma once

// Confusion matrices and one-vs-rest classification metrics.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace emagdm {

/// Rows are true classes, columns predicted classes.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t classes);
  static ConfusionMatrix from_counts(const std::vector<std::vector<std::size_t>>& counts);
  static ConfusionMatrix from_predictions(std::span<const int> truth, std::span<const int> predicted,
                                          std::size_t classes);

  void add(int truth, int predicted);

  std::size_t classes() const { return classes_; }
  std::size_t count(std::size_t truth, std::size_t predicted) const { return counts_[truth * classes_ + predicted]; }
  std::size_t total() const;

 private:
  std::size_t classes_;
  std::vector<std::size_t> counts_;
};

/// A metric is nullopt where its denominator is zero.
struct ClassMetrics {
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
  std::optional<double> accuracy;
  std::optional<double> sensitivity;
  std::optional<double> specificity;
  std::optional<double> precision;
  std::optional<double> f1;
};

struct MetricsReport {
  std::vector<ClassMetrics> per_class;
  /// Means over the classes where each metric is defined.
  ClassMetrics macro;
  /// Set when some per-class value was undefined and left out of `macro`.
  bool macro_excludes_undefined = false;
  /// Fraction of samples on the diagonal.
  double overall_accuracy = 0.0;
  /// Cohen's kappa; nullopt when chance agreement is 1.
  std::optional<double> kappa;
};

/// Throws DomainError when the matrix is empty.
MetricsReport score(const ConfusionMatrix& cm);

}  // namespace emagdm
