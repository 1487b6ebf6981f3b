#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "emagdm/errors.hpp"
#include "emagdm/fusion.hpp"
#include "emagdm/linguistic.hpp"

namespace emagdm::cli {

/// Malformed input file. Line and column are 1-based; column 0 means the
/// whole line.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct CsvRow {
  std::size_t line;
  std::vector<std::string> fields;
};

/// Comma-separated rows with optional double-quoted fields. Blank lines are
/// skipped; a trailing '\r' is dropped.
std::vector<CsvRow> read_csv(std::istream& in, const std::string& source);

/// Strict decimal parse of a whole field.
double parse_number(const std::string& text, const std::string& source, std::size_t line, std::size_t column);

/// First row: a corner cell then attribute names; every further row: the
/// alternative name then one number per attribute. The expert id is the
/// file stem.
DecisionMatrix read_decision_matrix(const std::filesystem::path& path);
DecisionMatrix parse_decision_matrix(std::istream& in, const std::string& expert_id, const std::string& source);
void write_decision_matrix(std::ostream& out, const DecisionMatrix& m);

/// Header row of dimension names, optionally ending in "label"; one row per
/// sample. Labels must be non-negative integers.
FeatureSet read_feature_set(const std::filesystem::path& path, const std::string& source_id);
FeatureSet parse_feature_set(std::istream& in, const std::string& source_id, const std::string& source);
void write_feature_set(std::ostream& out, const FeatureSet& set);

}  // namespace emagdm::cli
