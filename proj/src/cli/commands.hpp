#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace emagdm::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kParse = 2, kDegenerate = 3, kConfig = 4 };

struct GlobalOptions {
  std::string config;
  std::string out = "out";
  bool json = false;
  bool dump_intermediates = false;
  std::optional<std::uint64_t> seed;
};

/// Decision-matrix CSVs, or a single directory whose *.csv files are read
/// in name order.
int cmd_rank(const std::vector<std::string>& inputs, const GlobalOptions& opts, std::ostream& out, std::ostream& err);
int cmd_fuse_features(const std::string& manifest, const GlobalOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify_paper(const GlobalOptions& opts, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace emagdm::cli
