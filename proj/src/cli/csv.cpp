#include "cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>

namespace emagdm::cli {

namespace {

std::string location(const std::string& source, std::size_t line, std::size_t column) {
  std::string s = source + ":" + std::to_string(line);
  if (column > 0) s += ":" + std::to_string(column);
  return s;
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path.string());
  return in;
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& what)
    : Error(location(source, line, column) + ": " + what), line_(line), column_(column) {}

std::vector<CsvRow> read_csv(std::istream& in, const std::string& source) {
  std::vector<CsvRow> rows;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    CsvRow row{line_no, {}};
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (quoted) {
        if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          field += c;
        }
      } else if (c == '"') {
        if (!field.empty() && field.find_first_not_of(" \t") != std::string::npos) {
          throw ParseError(source, line_no, row.fields.size() + 1, "unexpected quote inside field");
        }
        field.clear();
        quoted = true;
      } else if (c == ',') {
        row.fields.push_back(field);
        field.clear();
      } else {
        field += c;
      }
    }
    if (quoted) throw ParseError(source, line_no, row.fields.size() + 1, "unterminated quoted field");
    row.fields.push_back(field);
    for (auto& f : row.fields) {
      const auto a = f.find_first_not_of(" \t");
      const auto b = f.find_last_not_of(" \t");
      f = a == std::string::npos ? std::string() : f.substr(a, b - a + 1);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double parse_number(const std::string& text, const std::string& source, std::size_t line, std::size_t column) {
  if (text.empty()) throw ParseError(source, line, column, "empty numeric cell");
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(source, line, column, "non-numeric cell \"" + text + "\"");
  }
  if (!std::isfinite(v)) throw ParseError(source, line, column, "non-finite value \"" + text + "\"");
  return v;
}

DecisionMatrix parse_decision_matrix(std::istream& in, const std::string& expert_id, const std::string& source) {
  const auto rows = read_csv(in, source);
  if (rows.empty()) throw ParseError(source, 1, 0, "empty file");
  const auto& header = rows.front();
  if (header.fields.size() < 2) throw ParseError(source, header.line, 0, "header needs at least one attribute");
  DecisionMatrix m;
  m.expert_id = expert_id;
  m.attributes.assign(header.fields.begin() + 1, header.fields.end());
  const std::size_t q = m.attributes.size();
  std::vector<std::vector<double>> values;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != q + 1) {
      throw ParseError(source, row.line, 0,
                       "row has " + std::to_string(row.fields.size()) + " fields, expected " + std::to_string(q + 1));
    }
    m.alternatives.push_back(row.fields[0]);
    std::vector<double> v(q);
    for (std::size_t j = 0; j < q; ++j) v[j] = parse_number(row.fields[j + 1], source, row.line, j + 2);
    values.push_back(std::move(v));
  }
  if (values.empty()) throw ParseError(source, header.line, 0, "no data rows");
  m.values = Matrix::from_rows(values);
  return m;
}

DecisionMatrix read_decision_matrix(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_decision_matrix(in, path.stem().string(), path.string());
}

void write_decision_matrix(std::ostream& out, const DecisionMatrix& m) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "alternative";
  for (const auto& a : m.attributes) out << ',' << quote_if_needed(a);
  out << '\n';
  for (std::size_t i = 0; i < m.alternative_count(); ++i) {
    out << quote_if_needed(m.alternatives[i]);
    for (std::size_t j = 0; j < m.attribute_count(); ++j) out << ',' << m.values(i, j);
    out << '\n';
  }
}

FeatureSet parse_feature_set(std::istream& in, const std::string& source_id, const std::string& source) {
  const auto rows = read_csv(in, source);
  if (rows.empty()) throw ParseError(source, 1, 0, "empty file");
  const auto& header = rows.front();
  const bool labeled = header.fields.back() == "label";
  const std::size_t dims = header.fields.size() - (labeled ? 1 : 0);
  if (dims == 0) throw ParseError(source, header.line, 0, "no feature columns");
  FeatureSet set;
  set.source_id = source_id;
  std::vector<std::vector<double>> values;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != header.fields.size()) {
      throw ParseError(source, row.line, 0,
                       "row has " + std::to_string(row.fields.size()) + " fields, expected " +
                           std::to_string(header.fields.size()));
    }
    std::vector<double> v(dims);
    for (std::size_t d = 0; d < dims; ++d) v[d] = parse_number(row.fields[d], source, row.line, d + 1);
    values.push_back(std::move(v));
    if (labeled) {
      const auto& f = row.fields[dims];
      int label = -1;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), label);
      if (f.empty() || ec != std::errc() || ptr != f.data() + f.size() || label < 0) {
        throw ParseError(source, row.line, dims + 1, "label \"" + f + "\" is not a non-negative integer");
      }
      set.labels.push_back(label);
    }
  }
  if (values.empty()) throw ParseError(source, header.line, 0, "no data rows");
  set.features = Matrix::from_rows(values);
  return set;
}

FeatureSet read_feature_set(const std::filesystem::path& path, const std::string& source_id) {
  auto in = open(path);
  return parse_feature_set(in, source_id, path.string());
}

void write_feature_set(std::ostream& out, const FeatureSet& set) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t d = 0; d < set.features.cols(); ++d) out << (d ? "," : "") << 'd' << d;
  if (set.has_labels()) out << ",label";
  out << '\n';
  for (std::size_t i = 0; i < set.features.rows(); ++i) {
    for (std::size_t d = 0; d < set.features.cols(); ++d) out << (d ? "," : "") << set.features(i, d);
    if (set.has_labels()) out << ',' << set.labels[i];
    out << '\n';
  }
}

}  // namespace emagdm::cli
