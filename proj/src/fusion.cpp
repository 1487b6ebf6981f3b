#include "emagdm/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "emagdm/errors.hpp"
#include "emagdm/linguistic.hpp"

namespace emagdm {

void require_conformable_sources(std::span<const FeatureSet> sources) {
  if (sources.size() < 2) throw DomainError("feature fusion requires >= 2 sources");
  const auto& first = sources.front();
  if (first.features.rows() < 2 || first.features.cols() < 1) {
    throw DomainError("source '" + first.source_id + "' needs at least 2 samples and 1 dimension");
  }
  for (const auto& s : sources) {
    if (s.features.rows() != first.features.rows() || s.features.cols() != first.features.cols()) {
      throw DomainError("source '" + s.source_id + "' is " + std::to_string(s.features.rows()) + "x" +
                        std::to_string(s.features.cols()) + ", expected " + std::to_string(first.features.rows()) +
                        "x" + std::to_string(first.features.cols()));
    }
    if (s.has_labels() && s.labels.size() != s.features.rows()) {
      throw DomainError("source '" + s.source_id + "' has " + std::to_string(s.labels.size()) + " labels for " +
                        std::to_string(s.features.rows()) + " samples");
    }
    if (s.has_labels() && first.has_labels() && s.labels != first.labels) {
      throw DomainError("source '" + s.source_id + "' disagrees with '" + first.source_id + "' on labels");
    }
  }
}

std::vector<std::pair<std::size_t, std::size_t>> balanced_blocks(std::size_t dims, std::size_t block_size) {
  if (block_size < 1) throw DomainError("block_size must be >= 1");
  if (dims == 0) return {};
  const std::size_t count = (dims + block_size - 1) / block_size;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t start = 0;
  for (std::size_t b = 0; b < count; ++b) {
    const std::size_t width = dims / count + (b < dims % count ? 1 : 0);
    out.emplace_back(start, start + width);
    start += width;
  }
  return out;
}

std::vector<std::size_t> subsample_rows(std::size_t n, std::size_t cap, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (n <= cap) return idx;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < cap; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(cap);
  std::sort(idx.begin(), idx.end());
  return idx;
}

FusionWeights estimate_fusion_weights(std::span<const FeatureSet> sources, const FusionPlan& plan) {
  require_conformable_sources(sources);
  if (plan.sample_cap < 2) throw DomainError("sample_cap must be >= 2");
  const std::size_t k = sources.size();
  const std::size_t dims = sources.front().features.cols();

  FusionWeights fw;
  fw.sample_rows = subsample_rows(sources.front().features.rows(), plan.sample_cap, plan.seed);
  fw.blocks = balanced_blocks(dims, plan.block_size);

  std::vector<std::string> alts;
  for (auto r : fw.sample_rows) alts.push_back("s" + std::to_string(r));

  std::vector<double> total(k, 0.0);
  for (const auto& [first, last] : fw.blocks) {
    std::vector<std::string> attrs;
    for (std::size_t d = first; d < last; ++d) attrs.push_back("d" + std::to_string(d));
    std::vector<DecisionMatrix> experts;
    for (const auto& s : sources) {
      Matrix m(fw.sample_rows.size(), last - first);
      for (std::size_t i = 0; i < fw.sample_rows.size(); ++i) {
        for (std::size_t d = first; d < last; ++d) {
          const double v = s.features(fw.sample_rows[i], d);
          if (!std::isfinite(v)) {
            throw DomainError("source '" + s.source_id + "', dim " + std::to_string(d) + ": non-finite value");
          }
          m(i, d - first) = v;
        }
      }
      experts.push_back({s.source_id, std::move(m), alts, attrs});
    }
    PipelineResult res;
    try {
      res = estimate_expert_weights(experts, plan.pipeline);
    } catch (const DegenerateError& e) {
      // Name the (source, dim) when a single column is constant or zero.
      for (const auto& s : sources) {
        for (std::size_t d = first; d < last; ++d) {
          double lo = std::numeric_limits<double>::infinity(), hi = -lo;
          for (auto r : fw.sample_rows) {
            lo = std::min(lo, s.features(r, d));
            hi = std::max(hi, s.features(r, d));
          }
          if (lo == hi) {
            throw DegenerateError("degenerate feature column: source '" + s.source_id + "', dim " + std::to_string(d) +
                                  " is constant over the sampled rows");
          }
        }
      }
      throw;
    }
    fw.zero_divergence = fw.zero_divergence || res.weights.zero_divergence;
    for (std::size_t j = 0; j < k; ++j) total[j] += res.weights.weights[j];
    fw.block_weights.push_back(res.weights.weights);
  }
  const double s = std::accumulate(total.begin(), total.end(), 0.0);
  fw.weights.resize(k);
  for (std::size_t j = 0; j < k; ++j) fw.weights[j] = total[j] / s;
  return fw;
}

FeatureSet fuse_features(std::span<const FeatureSet> sources, std::span<const double> weights) {
  require_conformable_sources(sources);
  if (weights.size() != sources.size()) throw DomainError("fusion needs one weight per source");
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9) throw DomainError("fusion weights must sum to 1");

  std::vector<Matrix> normalized;
  for (const auto& s : sources) {
    DecisionMatrix dm;
    dm.expert_id = s.source_id;
    dm.values = s.features;
    for (std::size_t i = 0; i < s.features.rows(); ++i) dm.alternatives.push_back(std::to_string(i));
    for (std::size_t d = 0; d < s.features.cols(); ++d) dm.attributes.push_back("d" + std::to_string(d));
    normalized.push_back(normalize_decision_matrix(dm).values);
  }
  FeatureSet out;
  out.source_id = "fused";
  out.features = fuse(normalized, weights);
  for (const auto& s : sources) {
    if (s.has_labels()) {
      out.labels = s.labels;
      break;
    }
  }
  return out;
}

FeatureSet select_rows(const FeatureSet& set, std::span<const std::size_t> rows) {
  FeatureSet out;
  out.source_id = set.source_id;
  out.features = Matrix(rows.size(), set.features.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= set.features.rows()) throw DomainError("row index out of range");
    for (std::size_t d = 0; d < set.features.cols(); ++d) out.features(i, d) = set.features(rows[i], d);
    if (set.has_labels()) out.labels.push_back(set.labels[rows[i]]);
  }
  return out;
}

void NearestCentroid::fit(const Matrix& features, std::span<const int> labels) {
  if (labels.size() != features.rows()) throw DomainError("one label per sample required");
  if (labels.empty()) throw DomainError("cannot fit on zero samples");
  const int top = *std::max_element(labels.begin(), labels.end());
  if (*std::min_element(labels.begin(), labels.end()) < 0) throw DomainError("class ids must be >= 0");
  const auto classes = static_cast<std::size_t>(top) + 1;
  Matrix sums(classes, features.cols(), 0.0);
  std::vector<std::size_t> counts(classes, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto c = static_cast<std::size_t>(labels[i]);
    ++counts[c];
    for (std::size_t d = 0; d < features.cols(); ++d) sums(c, d) += features(i, d);
  }
  for (std::size_t c = 0; c < classes; ++c) {
    if (counts[c] == 0) throw DomainError("class " + std::to_string(c) + " has no training samples");
    for (std::size_t d = 0; d < features.cols(); ++d) sums(c, d) /= static_cast<double>(counts[c]);
  }
  centroids_ = std::move(sums);
}

std::vector<int> NearestCentroid::predict(const Matrix& features) const {
  if (centroids_.empty()) throw DomainError("nearest-centroid model is not fitted");
  if (features.cols() != centroids_.cols()) throw DomainError("feature width differs from the fitted model");
  std::vector<int> out(features.rows());
  for (std::size_t i = 0; i < features.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t c = 0; c < centroids_.rows(); ++c) {
      double d2 = 0.0;
      for (std::size_t d = 0; d < features.cols(); ++d) {
        const double diff = features(i, d) - centroids_(c, d);
        d2 += diff * diff;
      }
      if (d2 < best) {
        best = d2;
        arg = c;
      }
    }
    out[i] = static_cast<int>(arg);
  }
  return out;
}

TrainTestSplit train_test_split(std::size_t n, double train_ratio, std::uint64_t seed) {
  if (!(train_ratio > 0.0 && train_ratio < 1.0)) throw DomainError("train ratio must lie in (0, 1)");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  const auto cut = static_cast<std::size_t>(std::llround(train_ratio * static_cast<double>(n)));
  TrainTestSplit s;
  s.train.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(cut));
  s.test.assign(idx.begin() + static_cast<std::ptrdiff_t>(cut), idx.end());
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

std::vector<FeatureSet> synthetic_sources(const SyntheticSpec& spec, std::uint64_t seed) {
  if (spec.classes < 1 || spec.dims < 1 || spec.samples < spec.classes) {
    throw DomainError("synthetic spec needs classes >= 1, dims >= 1 and samples >= classes");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  Matrix centroids(spec.classes, spec.dims);
  for (std::size_t c = 0; c < spec.classes; ++c) {
    for (std::size_t d = 0; d < spec.dims; ++d) centroids(c, d) = spec.centroid_spread * unit(rng);
  }
  std::vector<int> labels(spec.samples);
  for (std::size_t i = 0; i < spec.samples; ++i) labels[i] = static_cast<int>(i % spec.classes);
  std::shuffle(labels.begin(), labels.end(), rng);

  Matrix informative(spec.samples, spec.dims), copy(spec.samples, spec.dims), noise(spec.samples, spec.dims);
  for (std::size_t i = 0; i < spec.samples; ++i) {
    for (std::size_t d = 0; d < spec.dims; ++d) {
      informative(i, d) = centroids(static_cast<std::size_t>(labels[i]), d) + spec.within_class_sd * unit(rng);
    }
  }
  for (std::size_t i = 0; i < spec.samples; ++i) {
    for (std::size_t d = 0; d < spec.dims; ++d) {
      double v = informative(i, d);
      if (u01(rng) < spec.impulse_fraction) v += (u01(rng) < 0.5 ? -1.0 : 1.0) * spec.impulse_size;
      copy(i, d) = v;
    }
  }
  for (std::size_t i = 0; i < spec.samples; ++i) {
    for (std::size_t d = 0; d < spec.dims; ++d) noise(i, d) = spec.noise_sd * unit(rng);
  }
  return {{"informative", std::move(informative), labels},
          {"noisy-copy", std::move(copy), labels},
          {"noise", std::move(noise), labels}};
}

}  // namespace emagdm
