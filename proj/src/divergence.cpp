#include "emagdm/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "emagdm/errors.hpp"

namespace emagdm {

namespace {

constexpr double kSumTolerance = 1e-9;

void check_distribution(const std::vector<double>& v, const char* what) {
  if (v.empty()) throw DomainError(std::string(what) + " must not be empty");
  double s = 0.0;
  for (double x : v) {
    if (!std::isfinite(x) || x < 0.0) throw DomainError(std::string(what) + " entries must be finite and >= 0");
    s += x;
  }
  if (std::abs(s - 1.0) > kSumTolerance) throw DomainError(std::string(what) + " must sum to 1");
}

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) throw DomainError("distribution lengths differ: " + std::to_string(a) + " vs " + std::to_string(b));
}

// x * log(x / y) with the 0 * log(0 / y) = 0 convention.
double xlogx_over_y(double x, double y, LogBase base) { return x > 0.0 ? x * log_in(x / y, base) : 0.0; }

}  // namespace

double log_in(double x, LogBase base) { return base == LogBase::two ? std::log2(x) : std::log(x); }

std::string to_string(LogBase base) { return base == LogBase::two ? "2" : "e"; }

LogBase parse_log_base(std::string_view text) {
  if (text == "2") return LogBase::two;
  if (text == "e") return LogBase::e;
  throw DomainError("log base must be \"2\" or \"e\", got \"" + std::string(text) + "\"");
}

ProbabilityVector::ProbabilityVector(std::vector<double> values) : values_(std::move(values)) {
  check_distribution(values_, "probability vector");
}

WeightVector::WeightVector(std::vector<double> values) : values_(std::move(values)) {
  check_distribution(values_, "weight vector");
}

WeightVector WeightVector::uniform(std::size_t n) {
  if (n == 0) throw DomainError("weight vector must not be empty");
  return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double entropy(std::span<const double> p, LogBase base) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * log_in(x, base);
  }
  return h;
}

double kl(const ProbabilityVector& a, const ProbabilityVector& b, LogBase base) {
  require_same_length(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    if (b[i] == 0.0) {
      throw DivergenceUndefinedError("KL divergence undefined: b[" + std::to_string(i) + "] = 0 while a[" +
                                     std::to_string(i) + "] > 0");
    }
    s += a[i] * log_in(a[i] / b[i], base);
  }
  return std::max(0.0, s);
}

double js(const ProbabilityVector& a, const ProbabilityVector& b, LogBase base) {
  require_same_length(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double mid = 0.5 * (a[i] + b[i]);
    s += 0.5 * (xlogx_over_y(a[i], mid, base) + xlogx_over_y(b[i], mid, base));
  }
  return std::max(0.0, s);
}

double generalized_js(std::span<const ProbabilityVector> dists, const WeightVector& w, LogBase base) {
  if (dists.size() != w.size()) {
    throw DomainError("generalized JS needs one weight per distribution");
  }
  const std::size_t n = dists.front().size();
  std::vector<double> mixture(n, 0.0);
  double mixed_entropy = 0.0;
  for (std::size_t i = 0; i < dists.size(); ++i) {
    require_same_length(dists[i].size(), n);
    for (std::size_t j = 0; j < n; ++j) mixture[j] += w[i] * dists[i][j];
    mixed_entropy += w[i] * entropy(dists[i].values(), base);
  }
  return std::max(0.0, entropy(mixture, base) - mixed_entropy);
}

std::vector<double> weighted_divergence_terms(std::span<const std::span<const double>> rows, const WeightVector& w,
                                              std::span<const double> cardinalities, LogBase base) {
  if (rows.size() != w.size()) throw DomainError("weighted divergence needs one weight per distribution");
  if (rows.size() < 2) throw DomainError("weighted divergence needs at least two distributions");
  const std::size_t n = rows.front().size();
  for (const auto& r : rows) require_same_length(r.size(), n);
  if (!cardinalities.empty()) require_same_length(cardinalities.size(), n);

  const std::size_t p = rows.size();
  std::vector<std::size_t> order(p);
  std::vector<double> terms(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rows[a][j] > rows[b][j]; });
    double mixture = 0.0;
    for (auto i : order) mixture += w[i] * rows[i][j];
    double t = 0.0;
    for (auto i : order) t += w[i] * xlogx_over_y(rows[i][j], mixture, base);
    const double card = cardinalities.empty() ? 1.0 : cardinalities[j];
    terms[j] = t / card;
  }
  return terms;
}

namespace {

std::vector<double> cardinalities_of(std::span<const Subset> propositions) {
  std::vector<double> c;
  c.reserve(propositions.size());
  for (const auto& p : propositions) {
    const auto k = p.cardinality();
    if (k == 0) throw DomainError("propositions must be nonempty");
    c.push_back(static_cast<double>(k));
  }
  return c;
}

double sum_terms(const std::vector<double>& terms) {
  double s = 0.0;
  for (double t : terms) s += t;
  return std::max(0.0, s);
}

}  // namespace

double bjs(const MassFunction& m1, const MassFunction& m2, std::span<const Subset> propositions, LogBase base) {
  const auto a = wpbl(m1, propositions);
  const auto b = wpbl(m2, propositions);
  return js(ProbabilityVector({a.values().begin(), a.values().end()}),
            ProbabilityVector({b.values().begin(), b.values().end()}), base);
}

double weighted_div(const MassFunction& m1, const MassFunction& m2, std::span<const Subset> propositions,
                    const WeightVector& w, LogBase base) {
  if (w.size() != 2) throw DomainError("weighted divergence takes exactly two weights");
  const auto a = wpbl(m1, propositions);
  const auto b = wpbl(m2, propositions);
  const std::span<const double> rows[] = {a.values(), b.values()};
  return sum_terms(weighted_divergence_terms(rows, w, {}, base));
}

double generalized_weighted_div(std::span<const MassFunction* const> ms, std::span<const Subset> propositions,
                                const WeightVector& w, LogBase base) {
  if (ms.size() < 2) throw DomainError("generalized weighted divergence needs at least two mass functions");
  if (ms.size() != w.size()) throw DomainError("generalized weighted divergence needs one weight per mass function");
  std::vector<WpblDistribution> dists;
  dists.reserve(ms.size());
  for (const auto* m : ms) dists.push_back(wpbl(*m, propositions));
  std::vector<std::span<const double>> rows;
  rows.reserve(dists.size());
  for (const auto& d : dists) rows.push_back(d.values());
  const auto cards = cardinalities_of(propositions);
  return sum_terms(weighted_divergence_terms(rows, w, cards, base));
}

}  // namespace emagdm
