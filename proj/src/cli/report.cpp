#include "cli/report.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "emagdm/errors.hpp"

namespace emagdm::cli {

using nlohmann::json;

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw DomainError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw DomainError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (double v : m.row(i)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string f6(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << v;
  return os.str();
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json("undefined"); }

json class_metrics_json(const ClassMetrics& m, bool counts) {
  json j = {
      {"accuracy", optional_json(m.accuracy)},   {"sensitivity", optional_json(m.sensitivity)},
      {"specificity", optional_json(m.specificity)}, {"precision", optional_json(m.precision)},
      {"f1", optional_json(m.f1)},
  };
  if (counts) {
    j["tp"] = m.tp;
    j["tn"] = m.tn;
    j["fp"] = m.fp;
    j["fn"] = m.fn;
  }
  return j;
}

std::vector<std::string> expert_ids(std::span<const DecisionMatrix> experts) {
  std::vector<std::string> ids;
  for (const auto& e : experts) ids.push_back(e.expert_id);
  return ids;
}

std::string pair_name(std::span<const DecisionMatrix> experts, const std::pair<std::size_t, std::size_t>& p) {
  return experts[p.first].expert_id + "-" + experts[p.second].expert_id;
}

std::vector<std::size_t> weight_order(std::span<const double> w) {
  std::vector<std::size_t> idx(w.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
  return idx;
}

}  // namespace

json pipeline_report_json(std::span<const DecisionMatrix> experts, const PipelineResult& r, const RunConfig& config,
                          bool intermediates) {
  const auto& first = experts.front();
  const auto ids = expert_ids(experts);
  json j;
  j["config"] = to_json(config);
  j["experts"] = ids;
  j["alternatives"] = first.alternatives;
  j["attributes"] = first.attributes;
  j["owa"] = {{"scheme", r.owa.tag()}, {"weights", r.owa.values}, {"orness", r.owa.orness()}};

  json normalized, beliefs, pls, wpbls;
  for (std::size_t k = 0; k < experts.size(); ++k) {
    normalized[ids[k]] = matrix_json(r.normalized[k].values);
    beliefs[ids[k]] = matrix_json(r.beliefs[k]);
    pls[ids[k]] = matrix_json(r.plausibilities[k]);
    wpbls[ids[k]] = matrix_json(r.wpbls[k]);
  }
  j["normalized"] = normalized;
  j["beliefs"] = beliefs;
  j["plausibilities"] = pls;
  j["wpbl"] = wpbls;

  json pairs = json::array();
  for (const auto& p : r.divergence.pairs) pairs.push_back(pair_name(experts, p));
  std::vector<double> pair_avg(r.divergence.pairs.size(), 0.0);
  for (std::size_t c = 0; c < pair_avg.size(); ++c) {
    for (std::size_t i = 0; i < r.divergence.pairwise.rows(); ++i) pair_avg[c] += r.divergence.pairwise(i, c);
    pair_avg[c] /= static_cast<double>(r.divergence.pairwise.rows());
  }
  j["pairwise_divergence"] = {{"pairs", pairs}, {"values", matrix_json(r.divergence.pairwise)}, {"averages", pair_avg}};
  j["divergence_matrix"] = matrix_json(r.divergence.aggregate);

  json order = json::array();
  for (auto k : weight_order(r.weights.weights)) order.push_back(ids[k]);
  j["expert_weights"] = {{"averages", r.weights.averages},
                         {"supports", r.weights.supports},
                         {"weights", r.weights.weights},
                         {"zero_divergence", r.weights.zero_divergence},
                         {"order", order}};

  json ranking = json::array();
  for (auto i : r.ranking.order) ranking.push_back(first.alternatives[i]);
  j["fused"] = matrix_json(r.ranking.fused);
  j["ideal"] = r.ranking.ideal;
  j["scores"] = r.ranking.scores;
  j["ranking"] = ranking;

  json warnings = json::array();
  for (std::size_t k = 0; k < experts.size(); ++k) {
    for (auto a : r.memberships[k].degenerate_attributes) {
      warnings.push_back("expert " + ids[k] + ": attribute '" + first.attributes[a] + "' is constant; uniform memberships used");
    }
    for (const auto& [a, f] : r.tensors[k].zero_columns) {
      warnings.push_back("expert " + ids[k] + ": attribute '" + first.attributes[a] + "' term " + std::to_string(f + 1) +
                         " has zero membership everywhere; masses set to 0");
    }
  }
  if (r.weights.zero_divergence) warnings.push_back("zero average divergence; weight shared among those experts");
  j["warnings"] = warnings;

  if (intermediates) {
    json mem, bpa;
    for (std::size_t k = 0; k < experts.size(); ++k) {
      mem[ids[k]] = matrix_json(r.memberships[k].values());
      bpa[ids[k]] = matrix_json(r.tensors[k].values());
    }
    j["memberships"] = mem;
    j["bpas"] = bpa;
  }
  return j;
}

std::string pipeline_report_markdown(std::span<const DecisionMatrix> experts, const PipelineResult& r,
                                     const RunConfig& config) {
  const auto& first = experts.front();
  std::ostringstream os;
  os << "# Evidential MAGDM report\n\n";
  os << "## Configuration\n\n";
  const auto cfg = to_json(config);
  for (const auto& [key, value] : cfg.items()) os << "- " << key << ": " << value.dump() << "\n";
  os << "- owa weights:";
  for (double w : r.owa.values) os << ' ' << f6(w);
  os << "\n\n## Pairwise divergence\n\n| alternative |";
  for (const auto& p : r.divergence.pairs) os << " D(" << pair_name(experts, p) << ") |";
  os << "\n|---|";
  for (std::size_t c = 0; c < r.divergence.pairs.size(); ++c) os << "---|";
  os << "\n";
  for (std::size_t i = 0; i < r.divergence.pairwise.rows(); ++i) {
    os << "| " << first.alternatives[i] << " |";
    for (double v : r.divergence.pairwise.row(i)) os << ' ' << f6(v) << " |";
    os << "\n";
  }
  os << "\n## Divergence matrix\n\n| |";
  for (const auto& e : experts) os << ' ' << e.expert_id << " |";
  os << "\n|---|";
  for (std::size_t k = 0; k < experts.size(); ++k) os << "---|";
  os << "\n";
  for (std::size_t a = 0; a < experts.size(); ++a) {
    os << "| " << experts[a].expert_id << " |";
    for (double v : r.divergence.aggregate.row(a)) os << ' ' << f6(v) << " |";
    os << "\n";
  }
  os << "\n## Expert weights\n\n| expert | average | support | weight |\n|---|---|---|---|\n";
  for (std::size_t k = 0; k < experts.size(); ++k) {
    os << "| " << experts[k].expert_id << " | " << f6(r.weights.averages[k]) << " | " << f6(r.weights.supports[k])
       << " | " << f6(r.weights.weights[k]) << " |\n";
  }
  os << "\nExpert order:";
  bool sep = false;
  for (auto k : weight_order(r.weights.weights)) {
    os << (sep ? " > " : " ") << experts[k].expert_id;
    sep = true;
  }
  os << "\n\n## Ranking\n\n| rank | alternative |";
  for (const auto& a : first.attributes) os << ' ' << a << " |";
  os << " score |\n|---|---|";
  for (std::size_t j = 0; j < first.attributes.size(); ++j) os << "---|";
  os << "---|\n";
  for (std::size_t pos = 0; pos < r.ranking.order.size(); ++pos) {
    const auto i = r.ranking.order[pos];
    os << "| " << pos + 1 << " | " << first.alternatives[i] << " |";
    for (double v : r.ranking.fused.row(i)) os << ' ' << f6(v) << " |";
    os << ' ' << f6(r.ranking.scores[i]) << " |\n";
  }
  os << "\nIdeal solution:";
  for (double v : r.ranking.ideal) os << ' ' << f6(v);
  os << "\n";
  return os.str();
}

json metrics_json(const MetricsReport& report) {
  json per = json::array();
  for (const auto& m : report.per_class) per.push_back(class_metrics_json(m, true));
  return {{"per_class", per},
          {"macro", class_metrics_json(report.macro, false)},
          {"macro_excludes_undefined", report.macro_excludes_undefined},
          {"overall_accuracy", report.overall_accuracy},
          {"kappa", optional_json(report.kappa)}};
}

json verify_json(const VerifyReport& report, const RunConfig& config) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"id", c.id},
                      {"name", c.name},
                      {"delta", c.delta},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass},
                      {"informational", c.informational},
                      {"detail", c.detail}});
  }
  return {{"config", to_json(config)},
          {"calibration_best", report.calibration_best},
          {"checks", checks},
          {"all_pass", report.all_pass()}};
}

std::string verify_text(const VerifyReport& report) {
  std::ostringstream os;
  for (const auto& c : report.checks) {
    const std::string verdict = c.informational ? (c.pass ? "info" : "INFO") : (c.pass ? "PASS" : "FAIL");
    os << std::left << std::setw(6) << c.id << std::setw(5) << verdict << c.name << "  delta=" << std::scientific
       << std::setprecision(3) << c.delta << " tol=" << c.tolerance << std::defaultfloat << "\n      " << c.detail
       << "\n";
  }
  os << (report.all_pass() ? "all checks pass" : "some checks FAIL") << "\n";
  return os.str();
}

}  // namespace emagdm::cli
