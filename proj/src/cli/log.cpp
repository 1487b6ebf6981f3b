#include "cli/log.hpp"

#include <cstdlib>
#include <iostream>
#include <string_view>

namespace emagdm::cli {

LogLevel log_level() {
  const char* env = std::getenv("EVIDENTIAL_MAGDM_LOG");
  if (!env) return LogLevel::warn;
  const std::string_view v(env);
  if (v == "off") return LogLevel::off;
  if (v == "error") return LogLevel::error;
  if (v == "info") return LogLevel::info;
  if (v == "debug") return LogLevel::debug;
  return LogLevel::warn;
}

void log(LogLevel level, const std::string& message) {
  if (level == LogLevel::off || level > log_level()) return;
  static constexpr const char* names[] = {"off", "error", "warn", "info", "debug"};
  std::cerr << '[' << names[static_cast<int>(level)] << "] " << message << '\n';
}

}  // namespace emagdm::cli
