#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "emagdm/errors.hpp"
#include "emagdm/pipeline.hpp"
#include "json.hpp"

namespace emagdm::cli {

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  PipelineConfig pipeline;
  std::uint64_t seed = 0;
  /// fuse-features only.
  double train_ratio = 0.8;
  std::size_t block_size = 8;
  std::size_t sample_cap = 64;
};

/// Keys: terms, allow_any_term_count, uniform_on_degenerate,
/// clamp_out_of_domain, owa_scheme, owa_orness, log_base, pair_weights,
/// wpbl_axis, pair_aggregation, average_convention, zero_divergence, seed,
/// train_ratio, block_size, sample_cap. Missing keys keep `base`; unknown
/// keys and wrong types throw ConfigError.
RunConfig parse_run_config(const nlohmann::json& j, RunConfig base = {});
RunConfig load_run_config(const std::filesystem::path& path, RunConfig base = {});

/// Every key, so reports carry the full effective configuration.
nlohmann::json to_json(const RunConfig& c);

/// fuse-features manifest: {"sources": [...], "config": {...}}. A source is
/// a path (id = file stem) or {"id": ..., "path": ...}; paths are relative
/// to the manifest's directory.
struct Manifest {
  struct Source {
    std::string id;
    std::filesystem::path path;
  };
  std::vector<Source> sources;
  RunConfig config;
};

Manifest load_manifest(const std::filesystem::path& path, RunConfig base = {});

}  // namespace emagdm::cli
