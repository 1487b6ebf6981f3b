#pragma once

// Step 1 of the method: decision-matrix normalization, linguistic
// partitions of each attribute's observed range, membership matrices and
// the column-normalized BPA tensor.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "emagdm/evidence.hpp"
#include "emagdm/matrix.hpp"

namespace emagdm {

/// One expert's p x q score matrix (alternatives x attributes).
struct DecisionMatrix {
  std::string expert_id;
  Matrix values;
  std::vector<std::string> alternatives;
  std::vector<std::string> attributes;

  std::size_t alternative_count() const { return values.rows(); }
  std::size_t attribute_count() const { return values.cols(); }

  /// Throws DomainError unless p >= 2, q >= 1, labels match the shape and
  /// every value is finite.
  void validate() const;
};

/// Divides every column by its Euclidean norm (benefit attributes only).
/// Throws DegenerateError naming a zero-norm column.
DecisionMatrix normalize_decision_matrix(const DecisionMatrix& m);

/// [c, d] split into H equal steps; H + 1 linguistic terms.
struct LinguisticPartition {
  double lower = 0.0;
  double upper = 1.0;
  int steps = 4;

  double width() const { return (upper - lower) / steps; }
  std::size_t term_count() const { return static_cast<std::size_t>(steps) + 1; }
};

/// c = min, d = max of the column. Throws DegenerateError when c == d and
/// DomainError when steps < 2.
LinguisticPartition build_partition(std::span<const double> column, int steps);

/// Degree of y in term `term` (1-based, 1..H+1). Term 1 falls linearly over
/// [c, d], term H+1 rises linearly, interior terms peak at c + h*alpha.
/// Throws DomainError for y outside [c, d].
double membership(double y, std::size_t term, const LinguisticPartition& part);

struct MembershipOptions {
  std::size_t terms = 5;
  /// Term counts outside [5, 9] (but >= 3) are rejected unless set.
  bool allow_any_term_count = false;
  /// Constant attribute columns get uniform 1/l memberships instead of an error.
  bool uniform_on_degenerate = false;
  bool clamp_out_of_domain = false;
};

/// Validates the term-count policy; returns H = terms - 1.
int steps_for(const MembershipOptions& opts);

/// p x (q*l) matrix blocked by attribute; column (j*l + f) holds term f of
/// attribute j (both 0-based here).
class TermBlockMatrix {
 public:
  TermBlockMatrix() = default;
  TermBlockMatrix(std::string expert_id, std::size_t alternatives, std::size_t attributes, std::size_t terms);

  const std::string& expert_id() const { return expert_id_; }
  std::size_t alternatives() const { return values_.rows(); }
  std::size_t attributes() const { return attributes_; }
  std::size_t terms() const { return terms_; }

  double& at(std::size_t alt, std::size_t attr, std::size_t term) { return values_(alt, attr * terms_ + term); }
  double at(std::size_t alt, std::size_t attr, std::size_t term) const { return values_(alt, attr * terms_ + term); }
  std::span<const double> block(std::size_t alt, std::size_t attr) const {
    return values_.row(alt).subspan(attr * terms_, terms_);
  }
  const Matrix& values() const { return values_; }

 private:
  std::string expert_id_;
  std::size_t attributes_ = 0;
  std::size_t terms_ = 0;
  Matrix values_;
};

struct MembershipMatrix : TermBlockMatrix {
  using TermBlockMatrix::TermBlockMatrix;
  /// Attributes whose domain collapsed to a point (only with uniform_on_degenerate).
  std::vector<std::size_t> degenerate_attributes;
};

struct BpaTensor : TermBlockMatrix {
  using TermBlockMatrix::TermBlockMatrix;
  /// (attribute, term) columns whose membership sum was zero; left as zeros.
  std::vector<std::pair<std::size_t, std::size_t>> zero_columns;
};

MembershipMatrix membership_matrix(const DecisionMatrix& m, const MembershipOptions& opts);
BpaTensor bpa_tensor(const MembershipMatrix& r);

/// Mass vector of one (alternative, attribute) cell as a PseudoBpa over the
/// singleton linguistic terms.
PseudoBpa cell_mass(const BpaTensor& t, std::size_t alt, std::size_t attr, const FramePtr& term_frame);

/// "alt,attr,term,value" rows, 1-based term index, full precision.
void write_term_csv(std::ostream& os, const TermBlockMatrix& t, std::span<const std::string> alternatives,
                    std::span<const std::string> attributes);

}  // namespace emagdm
