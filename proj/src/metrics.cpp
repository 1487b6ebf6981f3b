#include "emagdm/metrics.hpp"

#include <string>

#include "emagdm/errors.hpp"

namespace emagdm {

ConfusionMatrix::ConfusionMatrix(std::size_t classes) : classes_(classes), counts_(classes * classes, 0) {
  if (classes == 0) throw DomainError("a confusion matrix needs at least one class");
}

ConfusionMatrix ConfusionMatrix::from_counts(const std::vector<std::vector<std::size_t>>& counts) {
  ConfusionMatrix cm(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i].size() != counts.size()) throw DomainError("confusion matrix must be square");
    for (std::size_t j = 0; j < counts.size(); ++j) cm.counts_[i * cm.classes_ + j] = counts[i][j];
  }
  return cm;
}

ConfusionMatrix ConfusionMatrix::from_predictions(std::span<const int> truth, std::span<const int> predicted,
                                                  std::size_t classes) {
  if (truth.size() != predicted.size()) throw DomainError("truth and prediction lengths differ");
  ConfusionMatrix cm(classes);
  for (std::size_t i = 0; i < truth.size(); ++i) cm.add(truth[i], predicted[i]);
  return cm;
}

void ConfusionMatrix::add(int truth, int predicted) {
  const auto n = static_cast<int>(classes_);
  if (truth < 0 || truth >= n || predicted < 0 || predicted >= n) {
    throw DomainError("class id out of range: " + std::to_string(truth) + " / " + std::to_string(predicted));
  }
  ++counts_[static_cast<std::size_t>(truth) * classes_ + static_cast<std::size_t>(predicted)];
}

std::size_t ConfusionMatrix::total() const {
  std::size_t s = 0;
  for (auto c : counts_) s += c;
  return s;
}

namespace {

std::optional<double> ratio(double num, double den) {
  if (den == 0.0) return std::nullopt;
  return num / den;
}

struct Mean {
  double sum = 0.0;
  std::size_t n = 0;
  bool skipped = false;

  void add(const std::optional<double>& v) {
    if (v) {
      sum += *v;
      ++n;
    } else {
      skipped = true;
    }
  }
  std::optional<double> value() const { return n ? std::optional<double>(sum / static_cast<double>(n)) : std::nullopt; }
};

}  // namespace

MetricsReport score(const ConfusionMatrix& cm) {
  const std::size_t total = cm.total();
  if (total == 0) throw DomainError("cannot score an empty confusion matrix");
  const std::size_t c = cm.classes();
  const double n = static_cast<double>(total);

  std::vector<std::size_t> row(c, 0), col(c, 0);
  std::size_t diag = 0;
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      row[i] += cm.count(i, j);
      col[j] += cm.count(i, j);
    }
    diag += cm.count(i, i);
  }

  MetricsReport r;
  Mean acc, sens, spec, prec, f1;
  for (std::size_t k = 0; k < c; ++k) {
    ClassMetrics m;
    m.tp = cm.count(k, k);
    m.fn = row[k] - m.tp;
    m.fp = col[k] - m.tp;
    m.tn = total - m.tp - m.fn - m.fp;
    const double tp = static_cast<double>(m.tp), tn = static_cast<double>(m.tn);
    const double fp = static_cast<double>(m.fp), fn = static_cast<double>(m.fn);
    m.accuracy = (tp + tn) / n;
    m.sensitivity = ratio(tp, tp + fn);
    m.specificity = ratio(tn, tn + fp);
    m.precision = ratio(tp, tp + fp);
    if (m.sensitivity && m.precision) m.f1 = ratio(2.0 * *m.precision * *m.sensitivity, *m.precision + *m.sensitivity);
    acc.add(m.accuracy);
    sens.add(m.sensitivity);
    spec.add(m.specificity);
    prec.add(m.precision);
    f1.add(m.f1);
    r.per_class.push_back(m);
  }
  r.macro.accuracy = acc.value();
  r.macro.sensitivity = sens.value();
  r.macro.specificity = spec.value();
  r.macro.precision = prec.value();
  r.macro.f1 = f1.value();
  r.macro_excludes_undefined = sens.skipped || spec.skipped || prec.skipped || f1.skipped;

  r.overall_accuracy = static_cast<double>(diag) / n;
  double pe = 0.0;
  for (std::size_t k = 0; k < c; ++k) pe += (static_cast<double>(row[k]) / n) * (static_cast<double>(col[k]) / n);
  if (pe < 1.0) r.kappa = (r.overall_accuracy - pe) / (1.0 - pe);
  return r;
}

}  // namespace emagdm
