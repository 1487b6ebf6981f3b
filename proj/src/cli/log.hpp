#pragma once

#include <string>

namespace emagdm::cli {

enum class LogLevel { off, error, warn, info, debug };

/// Level from EVIDENTIAL_MAGDM_LOG ("off", "error", "warn", "info", "debug");
/// warn when unset or unrecognized.
LogLevel log_level();

/// Writes "[level] message" to stderr when `level` is enabled.
void log(LogLevel level, const std::string& message);

}  // namespace emagdm::cli
