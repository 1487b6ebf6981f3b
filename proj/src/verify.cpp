#include "emagdm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "emagdm/calibration.hpp"
#include "emagdm/errors.hpp"
#include "emagdm/recruitment.hpp"

namespace emagdm {

namespace rc = recruitment;

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.informational || c.pass; });
}

namespace {

std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(precision);
  os << v;
  return os.str();
}

std::string join(std::span<const double> v, int precision = 4) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i], precision);
  return s + ")";
}

std::vector<std::size_t> descending(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  return idx;
}

std::string order_text(std::span<const std::size_t> order, const std::string& prefix) {
  std::string s;
  for (std::size_t i = 0; i < order.size(); ++i) s += (i ? "," : "") + prefix + std::to_string(order[i] + 1);
  return s;
}

/// Candidates sorted by printed rank, shared ranks by lower index.
std::vector<std::size_t> printed_order() {
  const auto ranks = rc::printed_ranks();
  std::vector<std::size_t> idx(ranks.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return ranks[a] < ranks[b]; });
  return idx;
}

template <typename F>
Check guarded(std::string id, std::string name, double tolerance, F&& body) {
  Check c;
  c.id = std::move(id);
  c.name = std::move(name);
  c.tolerance = tolerance;
  try {
    body(c);
  } catch (const Error& e) {
    c.pass = false;
    c.detail = std::string("error: ") + e.what();
  }
  return c;
}

Check informational(Check c) {
  c.informational = true;
  return c;
}

Check check_table(const std::string& id, const std::string& name, const Matrix& computed, const Matrix& printed,
                  std::span<const rc::PrintDefect> defects, double tolerance) {
  Check c;
  c.id = id;
  c.name = name;
  c.tolerance = tolerance;
  if (computed.rows() != printed.rows() || computed.cols() != printed.cols()) {
    c.detail = "shape " + std::to_string(computed.rows()) + "x" + std::to_string(computed.cols()) + " vs printed " +
               std::to_string(printed.rows()) + "x" + std::to_string(printed.cols());
    return c;
  }
  bool defects_ok = true;
  std::string notes;
  for (std::size_t i = 0; i < printed.rows(); ++i) {
    for (std::size_t j = 0; j < printed.cols(); ++j) {
      const auto it = std::find_if(defects.begin(), defects.end(),
                                   [&](const rc::PrintDefect& d) { return d.row == i && d.col == j; });
      if (it != defects.end()) {
        const double dv = std::abs(computed(i, j) - it->reference);
        defects_ok = defects_ok && dv <= it->tolerance;
        notes += "; candidate " + std::to_string(i + 1) + " col " + std::to_string(j + 1) + ": " + it->note +
                 " (|d|=" + fmt(dv, 6) + ")";
        continue;
      }
      c.delta = std::max(c.delta, std::abs(computed(i, j) - printed(i, j)));
    }
  }
  c.pass = defects_ok && c.delta <= tolerance;
  c.detail = std::to_string(printed.rows() * printed.cols()) + " cells" + notes;
  return c;
}

}  // namespace

VerifyReport verify_paper(const PipelineConfig& config) {
  VerifyReport rep;
  rep.config = config;
  const auto experts = rc::decision_matrices();

  rep.checks.push_back(guarded("1", "memberships, expert u1", 1e-4, [&](Check& c) {
    const auto r = membership_matrix(experts[0], config.membership);
    const auto defects = rc::membership_print_defects();
    c = check_table("1", "memberships, expert u1", r.values(), rc::printed_memberships(), defects, 1e-4);
  }));

  rep.checks.push_back(guarded("2", "BPAs, expert u1", 1e-4, [&](Check& c) {
    const auto t = bpa_tensor(membership_matrix(experts[0], config.membership));
    c = check_table("2", "BPAs, expert u1", t.values(), rc::printed_bpas(), {}, 1e-4);
    if (!t.values().empty()) c.detail += "; candidate 1 Panel term 1 = " + fmt(t.values()(0, 0), 4);
  }));

  rep.checks.push_back(guarded("3", "pairwise divergence calibration", kCalibrationMaeTolerance, [&](Check& c) {
    const auto reference = rc::printed_pairwise_divergence();
    const auto ref_avg = rc::printed_pair_averages();
    const auto cand = score_candidate(experts, config, reference, ref_avg);
    const auto grid = calibration_grid(config);
    const auto cal = calibrate(experts, grid, reference, ref_avg);
    const auto& best = cal.candidates[cal.best];
    rep.calibration_best = best.label;
    if (!cand.ok) {
      c.detail = "error: " + cand.error;
      return;
    }
    c.delta = cand.mae;
    c.pass = cand.numeric_pass || cand.ordinal_pass;
    c.detail = "config " + cand.label + "; MAE " + fmt(cand.mae) + " (<= " + fmt(kCalibrationMaeTolerance) +
               "); max Average-row error " + fmt(cand.max_average_error) + " (<= " +
               fmt(kCalibrationAverageTolerance) + "); numeric " + (cand.numeric_pass ? "pass" : "fail") +
               ", ordinal " + (cand.ordinal_pass ? "pass" : "fail") + "; averages " + join(cand.averages) +
               "; grid best " + best.label + " MAE " + fmt(best.mae);
  }));

  rep.checks.push_back(guarded("4", "expert averages and supports from printed D_MM", 1e-4, [&](Check& c) {
    const auto ew = expert_weights(rc::printed_divergence_matrix(), config.average_convention,
                                   ZeroDivergencePolicy::error);
    const auto avg = rc::printed_expert_averages();
    const auto sup = rc::printed_expert_supports();
    double rel = 0.0;
    for (std::size_t k = 0; k < avg.size(); ++k) {
      c.delta = std::max(c.delta, std::abs(ew.averages[k] - avg[k]));
      rel = std::max(rel, std::abs(ew.supports[k] - sup[k]) / sup[k]);
    }
    c.pass = c.delta <= 1e-4 && rel <= 0.02;
    c.detail = "averages " + join(ew.averages, 6) + "; supports " + join(ew.supports, 2) +
               "; max support error " + fmt(100 * rel, 2) + "% (<= 2%)";
  }));

  PipelineResult e2e;
  bool have_e2e = false;
  try {
    e2e = run_pipeline(experts, config);
    have_e2e = true;
  } catch (const Error&) {
  }

  rep.checks.push_back(informational(guarded("4-e2e", "expert averages from computed D_MM", 1e-4, [&](Check& c) {
    if (!have_e2e) e2e = run_pipeline(experts, config);
    const auto avg = rc::printed_expert_averages();
    for (std::size_t k = 0; k < avg.size(); ++k) c.delta = std::max(c.delta, std::abs(e2e.weights.averages[k] - avg[k]));
    c.pass = c.delta <= 1e-4;
    c.detail = "averages " + join(e2e.weights.averages, 6) + "; supports " + join(e2e.weights.supports, 2);
  })));

  rep.checks.push_back(guarded("5", "expert weights and order", 0.02, [&](Check& c) {
    if (!have_e2e) e2e = run_pipeline(experts, config);
    const auto w = rc::printed_expert_weights();
    for (std::size_t k = 0; k < w.size(); ++k) c.delta = std::max(c.delta, std::abs(e2e.weights.weights[k] - w[k]));
    const auto order = descending(e2e.weights.weights);
    const bool order_ok = order == rc::printed_expert_order();
    c.pass = c.delta <= 0.02 && order_ok;
    c.detail = "weights " + join(e2e.weights.weights) + "; order " + order_text(order, "u") + (order_ok ? "" : " (expected u3,u4,u2,u1)");
  }));

  std::vector<Matrix> normalized;
  for (const auto& e : experts) normalized.push_back(normalize_decision_matrix(e).values);
  const auto printed_w = rc::printed_expert_weights();

  rep.checks.push_back(guarded("6", "fused matrix with printed weights", 1e-3, [&](Check& c) {
    const auto fused = fuse(normalized, printed_w);
    const auto r = rank(fused);
    const auto ref = rc::printed_fused();
    for (std::size_t i = 0; i < ref.rows(); ++i) {
      for (std::size_t j = 0; j < ref.cols(); ++j) c.delta = std::max(c.delta, std::abs(fused(i, j) - ref(i, j)));
    }
    const auto ideal = rc::printed_ideal();
    for (std::size_t j = 0; j < ideal.size(); ++j) c.delta = std::max(c.delta, std::abs(r.ideal[j] - ideal[j]));
    c.pass = c.delta <= 1e-3;
    c.detail = "candidate 1 " + join(fused.row(0)) + "; ideal " + join(r.ideal);
  }));

  rep.checks.push_back(guarded("7", "ranking with printed weights", 0.0, [&](Check& c) {
    const auto r = rank(fuse(normalized, printed_w));
    const auto expected = printed_order();
    c.pass = r.order == expected;
    c.detail = "order " + order_text(r.order, "") + (c.pass ? "" : "; expected " + order_text(expected, ""));
  }));

  rep.checks.push_back(informational(guarded("7-e2e", "ranking with computed weights", 0.0, [&](Check& c) {
    if (!have_e2e) e2e = run_pipeline(experts, config);
    const auto expected = printed_order();
    std::size_t moved = 0;
    for (std::size_t i = 0; i < expected.size(); ++i) moved += e2e.ranking.order[i] != expected[i];
    c.delta = static_cast<double>(moved);
    c.pass = moved == 0;
    c.detail = "order " + order_text(e2e.ranking.order, "") + "; " + std::to_string(moved) + " positions differ";
  })));

  return rep;
}

}  // namespace emagdm
