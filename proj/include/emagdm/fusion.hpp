#pragma once

// Feature-level fusion: each feature source plays the role of an expert,
// samples are alternatives and feature dimensions attributes.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "emagdm/matrix.hpp"
#include "emagdm/pipeline.hpp"

namespace emagdm {

struct FeatureSet {
  std::string source_id;
  /// n_samples x n_dims
  Matrix features;
  /// Class id per sample; empty when unlabeled.
  std::vector<int> labels;

  bool has_labels() const { return !labels.empty(); }
};

/// Throws DomainError unless there are >= 2 sources with equal shapes and
/// equal labels (when present). The message names the offending source.
void require_conformable_sources(std::span<const FeatureSet> sources);

struct FusionPlan {
  /// Feature dimensions per pipeline run.
  std::size_t block_size = 8;
  /// Maximum number of samples used as alternatives.
  std::size_t sample_cap = 64;
  std::uint64_t seed = 0;
  PipelineConfig pipeline = [] {
    PipelineConfig c;
    c.zero_divergence = ZeroDivergencePolicy::share;
    return c;
  }();
};

struct FusionWeights {
  /// Block weights averaged, then renormalized.
  std::vector<double> weights;
  /// One weight vector per column block.
  std::vector<std::vector<double>> block_weights;
  /// Column ranges [first, last) of each block.
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  /// Rows used as alternatives, ascending.
  std::vector<std::size_t> sample_rows;
  /// Some block hit the zero-divergence policy.
  bool zero_divergence = false;
};

/// Splits `dims` columns into ceil(dims / block_size) contiguous blocks
/// whose sizes differ by at most one.
std::vector<std::pair<std::size_t, std::size_t>> balanced_blocks(std::size_t dims, std::size_t block_size);

/// `cap` distinct row indices out of n (all rows when n <= cap), ascending,
/// chosen by a seeded partial Fisher-Yates shuffle.
std::vector<std::size_t> subsample_rows(std::size_t n, std::size_t cap, std::uint64_t seed);

FusionWeights estimate_fusion_weights(std::span<const FeatureSet> sources, const FusionPlan& plan);

/// Column-normalizes every source and returns sum_k w_k Y_k with source id
/// "fused" and the shared labels. Weights must sum to 1.
FeatureSet fuse_features(std::span<const FeatureSet> sources, std::span<const double> weights);

/// Rows `rows` of `set`, labels included.
FeatureSet select_rows(const FeatureSet& set, std::span<const std::size_t> rows);

class NearestCentroid {
 public:
  /// Class ids must be in [0, C); every class in [0, C) needs a sample.
  void fit(const Matrix& features, std::span<const int> labels);
  /// Euclidean distance; ties go to the lower class id.
  std::vector<int> predict(const Matrix& features) const;

  const Matrix& centroids() const { return centroids_; }
  std::size_t classes() const { return centroids_.rows(); }

 private:
  Matrix centroids_;
};

struct TrainTestSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Seeded shuffle, first round(ratio * n) rows train; both parts ascending.
TrainTestSplit train_test_split(std::size_t n, double train_ratio, std::uint64_t seed);

/// Three-source benchmark: an informative source (class centroids plus unit
/// noise), a copy of it with sparse large impulses, and a pure-noise source.
struct SyntheticSpec {
  std::size_t samples = 64;
  std::size_t classes = 3;
  std::size_t dims = 32;
  double centroid_spread = 2.0;
  double within_class_sd = 1.0;
  double impulse_fraction = 0.02;
  double impulse_size = 4.0;
  double noise_sd = 1.0;
};

std::vector<FeatureSet> synthetic_sources(const SyntheticSpec& spec, std::uint64_t seed);

}  // namespace emagdm
