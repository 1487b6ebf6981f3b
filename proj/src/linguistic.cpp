#include "emagdm/linguistic.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "emagdm/errors.hpp"

namespace emagdm {

void DecisionMatrix::validate() const {
  const std::string who = expert_id.empty() ? "decision matrix" : "decision matrix '" + expert_id + "'";
  if (values.rows() < 2) throw DomainError(who + " needs at least 2 alternatives");
  if (values.cols() < 1) throw DomainError(who + " needs at least 1 attribute");
  if (alternatives.size() != values.rows()) throw DomainError(who + ": alternative labels do not match rows");
  if (attributes.size() != values.cols()) throw DomainError(who + ": attribute labels do not match columns");
  for (std::size_t i = 0; i < values.rows(); ++i) {
    for (std::size_t j = 0; j < values.cols(); ++j) {
      if (!std::isfinite(values(i, j))) {
        throw DomainError(who + ": non-finite value at (" + alternatives[i] + ", " + attributes[j] + ")");
      }
    }
  }
}

DecisionMatrix normalize_decision_matrix(const DecisionMatrix& m) {
  m.validate();
  DecisionMatrix out = m;
  for (std::size_t j = 0; j < m.attribute_count(); ++j) {
    double ss = 0.0;
    for (std::size_t i = 0; i < m.alternative_count(); ++i) ss += m.values(i, j) * m.values(i, j);
    const double norm = std::sqrt(ss);
    if (norm == 0.0) {
      throw DegenerateError("degenerate attribute: column '" + m.attributes[j] + "' of expert '" + m.expert_id +
                            "' has zero norm");
    }
    for (std::size_t i = 0; i < m.alternative_count(); ++i) out.values(i, j) = m.values(i, j) / norm;
  }
  return out;
}

LinguisticPartition build_partition(std::span<const double> column, int steps) {
  if (steps < 2) throw DomainError("a linguistic partition needs H >= 2 (at least 3 terms)");
  if (column.empty()) throw DomainError("cannot partition an empty column");
  const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
  if (*lo == *hi) throw DegenerateError("degenerate domain: all values equal " + std::to_string(*lo));
  return {*lo, *hi, steps};
}

double membership(double y, std::size_t term, const LinguisticPartition& part) {
  const double c = part.lower;
  const double d = part.upper;
  const auto last = part.term_count();
  if (term < 1 || term > last) throw DomainError("term index out of range");
  if (!(y >= c && y <= d)) throw DomainError("value " + std::to_string(y) + " outside the attribute domain");

  double mu = 0.0;
  if (term == 1) {
    mu = 1.0 - (y - c) / (d - c);
  } else if (term == last) {
    mu = 1.0 - (d - y) / (d - c);
  } else {
    const double h = static_cast<double>(term - 1);
    const double peak = c + h * part.width();
    if (y <= peak) {
      mu = 1.0 - (peak - y) / (h * part.width());
    } else {
      mu = 1.0 - (y - peak) / (d - peak);
    }
  }
  return std::clamp(mu, 0.0, 1.0);
}

int steps_for(const MembershipOptions& opts) {
  if (opts.terms < 3) throw DomainError("at least 3 linguistic terms are required");
  if (!opts.allow_any_term_count && (opts.terms < 5 || opts.terms > 9)) {
    throw DomainError("term count " + std::to_string(opts.terms) +
                      " outside [5, 9]; set allow_any_term_count to override");
  }
  return static_cast<int>(opts.terms) - 1;
}

TermBlockMatrix::TermBlockMatrix(std::string expert_id, std::size_t alternatives, std::size_t attributes,
                                 std::size_t terms)
    : expert_id_(std::move(expert_id)),
      attributes_(attributes),
      terms_(terms),
      values_(alternatives, attributes * terms, 0.0) {}

MembershipMatrix membership_matrix(const DecisionMatrix& m, const MembershipOptions& opts) {
  m.validate();
  const int steps = steps_for(opts);
  const std::size_t l = opts.terms;
  MembershipMatrix r(m.expert_id, m.alternative_count(), m.attribute_count(), l);
  for (std::size_t j = 0; j < m.attribute_count(); ++j) {
    const auto column = m.values.column(j);
    LinguisticPartition part;
    try {
      part = build_partition(column, steps);
    } catch (const DegenerateError&) {
      if (!opts.uniform_on_degenerate) {
        throw DegenerateError("degenerate domain: attribute '" + m.attributes[j] + "' of expert '" + m.expert_id +
                              "' is constant");
      }
      r.degenerate_attributes.push_back(j);
      for (std::size_t i = 0; i < m.alternative_count(); ++i) {
        for (std::size_t f = 0; f < l; ++f) r.at(i, j, f) = 1.0 / static_cast<double>(l);
      }
      continue;
    }
    for (std::size_t i = 0; i < m.alternative_count(); ++i) {
      double y = column[i];
      if (opts.clamp_out_of_domain) y = std::clamp(y, part.lower, part.upper);
      for (std::size_t f = 0; f < l; ++f) r.at(i, j, f) = membership(y, f + 1, part);
    }
  }
  return r;
}

BpaTensor bpa_tensor(const MembershipMatrix& r) {
  BpaTensor t(r.expert_id(), r.alternatives(), r.attributes(), r.terms());
  for (std::size_t j = 0; j < r.attributes(); ++j) {
    for (std::size_t f = 0; f < r.terms(); ++f) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.alternatives(); ++i) s += r.at(i, j, f);
      if (s == 0.0) {
        t.zero_columns.emplace_back(j, f);
        continue;
      }
      for (std::size_t i = 0; i < r.alternatives(); ++i) t.at(i, j, f) = r.at(i, j, f) / s;
    }
  }
  return t;
}

PseudoBpa cell_mass(const BpaTensor& t, std::size_t alt, std::size_t attr, const FramePtr& term_frame) {
  if (!term_frame || term_frame->size() != t.terms()) {
    throw DomainError("term frame size must equal the tensor's term count");
  }
  std::vector<FocalElement> focal;
  for (std::size_t f = 0; f < t.terms(); ++f) focal.push_back({term_frame->singleton(f), t.at(alt, attr, f)});
  return PseudoBpa(term_frame, std::move(focal));
}

void write_term_csv(std::ostream& os, const TermBlockMatrix& t, std::span<const std::string> alternatives,
                    std::span<const std::string> attributes) {
  os << "alt,attr,term,value\n";
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < t.alternatives(); ++i) {
    for (std::size_t j = 0; j < t.attributes(); ++j) {
      for (std::size_t f = 0; f < t.terms(); ++f) {
        os << alternatives[i] << ',' << attributes[j] << ',' << (f + 1) << ',' << t.at(i, j, f) << '\n';
      }
    }
  }
}

}  // namespace emagdm
