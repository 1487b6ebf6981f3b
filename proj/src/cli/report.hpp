#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "emagdm/fusion.hpp"
#include "emagdm/metrics.hpp"
#include "emagdm/pipeline.hpp"
#include "emagdm/verify.hpp"
#include "json.hpp"

namespace emagdm::cli {

/// Writes to a sibling temporary file, then renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

nlohmann::json matrix_json(const Matrix& m);

/// Full-precision machine report. Membership and BPA tensors are included
/// only with `intermediates`.
nlohmann::json pipeline_report_json(std::span<const DecisionMatrix> experts, const PipelineResult& result,
                                    const RunConfig& config, bool intermediates);

/// Human-readable report, numbers at 6 decimals.
std::string pipeline_report_markdown(std::span<const DecisionMatrix> experts, const PipelineResult& result,
                                     const RunConfig& config);

nlohmann::json metrics_json(const MetricsReport& report);

nlohmann::json verify_json(const VerifyReport& report, const RunConfig& config);
std::string verify_text(const VerifyReport& report);

/// Dump with 2-space indent and a trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace emagdm::cli
