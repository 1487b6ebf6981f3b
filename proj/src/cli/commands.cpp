#include "cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "cli/config.hpp"
#include "cli/csv.hpp"
#include "cli/log.hpp"
#include "cli/report.hpp"
#include "emagdm/errors.hpp"
#include "emagdm/fusion.hpp"
#include "emagdm/metrics.hpp"
#include "emagdm/recruitment.hpp"
#include "emagdm/verify.hpp"

namespace emagdm::cli {

namespace fs = std::filesystem;

namespace {

const char* kExitCodes =
    "Exit codes: 0 ok, 1 usage / I/O / invalid input, 2 malformed CSV (line:column reported),\n"
    "3 numeric degeneracy (offending cell or column named), 4 invalid config.\n"
    "Set EVIDENTIAL_MAGDM_LOG=off|error|warn|info|debug for log verbosity.";

/// Runs `body`, mapping library errors to exit codes.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const DegenerateError& e) {
    err << "degenerate input: " << e.what() << "\n";
    return kDegenerate;
  } catch (const TotalConflictError& e) {
    err << "degenerate input: " << e.what() << "\n";
    return kDegenerate;
  } catch (const DivergenceUndefinedError& e) {
    err << "degenerate input: " << e.what() << "\n";
    return kDegenerate;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

RunConfig effective_config(const GlobalOptions& opts, RunConfig base) {
  RunConfig c = opts.config.empty() ? base : load_run_config(opts.config, base);
  if (opts.seed) c.seed = *opts.seed;
  return c;
}

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> paths;
  if (inputs.size() == 1 && fs::is_directory(inputs.front())) {
    for (const auto& entry : fs::directory_iterator(inputs.front())) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv") paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) throw DomainError("no .csv files in " + inputs.front());
    return paths;
  }
  for (const auto& i : inputs) paths.emplace_back(i);
  return paths;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DomainError("cannot create " + dir.string() + ": " + ec.message());
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

double accuracy_of(const FeatureSet& set, const TrainTestSplit& split, std::size_t classes, MetricsReport* report) {
  const auto train = select_rows(set, split.train);
  const auto test = select_rows(set, split.test);
  NearestCentroid model;
  model.fit(train.features, train.labels);
  const auto predicted = model.predict(test.features);
  const auto cm = ConfusionMatrix::from_predictions(test.labels, predicted, classes);
  auto r = score(cm);
  if (report) *report = r;
  return r.overall_accuracy;
}

}  // namespace

int cmd_rank(const std::vector<std::string>& inputs, const GlobalOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig config = effective_config(opts, {});
    std::vector<DecisionMatrix> experts;
    std::set<std::string> ids;
    for (const auto& p : expand_inputs(inputs)) {
      log(LogLevel::info, "reading " + p.string());
      experts.push_back(read_decision_matrix(p));
      if (!ids.insert(experts.back().expert_id).second) {
        throw DomainError("duplicate expert id '" + experts.back().expert_id + "'");
      }
    }
    const auto result = run_pipeline(experts, config.pipeline);
    const auto report = pipeline_report_json(experts, result, config, opts.dump_intermediates);

    const fs::path dir(opts.out);
    ensure_dir(dir);
    write_atomic(dir / "report.json", dump(report));
    write_atomic(dir / "report.md", pipeline_report_markdown(experts, result, config));
    if (opts.dump_intermediates) {
      const auto& first = experts.front();
      for (std::size_t k = 0; k < experts.size(); ++k) {
        std::ostringstream m, b;
        write_term_csv(m, result.memberships[k], first.alternatives, first.attributes);
        write_term_csv(b, result.tensors[k], first.alternatives, first.attributes);
        write_atomic(dir / (experts[k].expert_id + ".membership.csv"), m.str());
        write_atomic(dir / (experts[k].expert_id + ".bpa.csv"), b.str());
      }
    }
    for (const auto& w : report.at("warnings")) log(LogLevel::warn, w.get<std::string>());

    if (opts.json) {
      out << dump(report);
      return static_cast<int>(kOk);
    }
    out << "experts:";
    for (std::size_t k = 0; k < experts.size(); ++k) {
      out << ' ' << experts[k].expert_id << '=' << fixed(result.weights.weights[k]);
    }
    out << "\nexpert order: ";
    const auto& order = report.at("expert_weights").at("order");
    for (std::size_t i = 0; i < order.size(); ++i) out << (i ? " > " : "") << order[i].get<std::string>();
    out << "\nranking:";
    for (auto i : result.ranking.order) out << ' ' << experts.front().alternatives[i];
    out << "\nreport: " << (dir / "report.json").string() << "\n";
    return static_cast<int>(kOk);
  });
}

int cmd_fuse_features(const std::string& manifest_path, const GlobalOptions& opts, std::ostream& out,
                      std::ostream& err) {
  return guarded(err, [&] {
    RunConfig base;
    base.pipeline.zero_divergence = ZeroDivergencePolicy::share;
    const auto manifest = load_manifest(manifest_path, base);
    const RunConfig config = effective_config(opts, manifest.config);
    if (manifest.sources.size() < 2) throw DomainError("feature fusion requires >= 2 sources");

    std::vector<FeatureSet> sources;
    for (const auto& s : manifest.sources) sources.push_back(read_feature_set(s.path, s.id));
    require_conformable_sources(sources);

    FusionPlan plan;
    plan.block_size = config.block_size;
    plan.sample_cap = config.sample_cap;
    plan.seed = config.seed;
    plan.pipeline = config.pipeline;
    const auto fw = estimate_fusion_weights(sources, plan);
    const auto fused = fuse_features(sources, fw.weights);

    nlohmann::json report;
    report["config"] = to_json(config);
    nlohmann::json ids = nlohmann::json::array(), weights;
    for (std::size_t k = 0; k < sources.size(); ++k) {
      ids.push_back(sources[k].source_id);
      weights[sources[k].source_id] = fw.weights[k];
    }
    report["sources"] = ids;
    report["weights"] = weights;
    report["block_weights"] = fw.block_weights;
    report["sample_rows"] = fw.sample_rows;
    report["zero_divergence"] = fw.zero_divergence;

    if (fused.has_labels()) {
      const auto n = fused.features.rows();
      const auto split = train_test_split(n, config.train_ratio, config.seed);
      const auto classes = static_cast<std::size_t>(*std::max_element(fused.labels.begin(), fused.labels.end())) + 1;
      MetricsReport fused_metrics;
      accuracy_of(fused, split, classes, &fused_metrics);
      report["split"] = {{"train", split.train.size()}, {"test", split.test.size()}};
      nlohmann::json metrics;
      metrics["fused"] = metrics_json(fused_metrics);
      for (const auto& s : sources) {
        MetricsReport m;
        accuracy_of(s, split, classes, &m);
        metrics[s.source_id] = metrics_json(m);
      }
      report["metrics"] = metrics;
    } else {
      log(LogLevel::warn, "sources carry no labels; skipping classification");
    }

    const fs::path dir(opts.out);
    ensure_dir(dir);
    std::ostringstream csv;
    write_feature_set(csv, fused);
    write_atomic(dir / "fused.csv", csv.str());
    write_atomic(dir / "metrics.json", dump(report));

    if (opts.json) {
      out << dump(report);
      return static_cast<int>(kOk);
    }
    out << "weights:";
    for (std::size_t k = 0; k < sources.size(); ++k) out << ' ' << sources[k].source_id << '=' << fixed(fw.weights[k]);
    out << "\n";
    if (report.contains("metrics")) {
      for (const auto& [name, m] : report.at("metrics").items()) {
        out << "accuracy " << name << ": " << fixed(m.at("overall_accuracy").get<double>(), 4) << "\n";
      }
    }
    out << "report: " << (dir / "metrics.json").string() << "\n";
    return static_cast<int>(kOk);
  });
}

int cmd_verify_paper(const GlobalOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunConfig base;
    base.pipeline = recruitment::calibrated_config();
    const RunConfig config = effective_config(opts, base);
    const auto report = verify_paper(config.pipeline);
    if (opts.json) {
      out << dump(verify_json(report, config));
    } else {
      out << "config: " << to_json(config).dump() << "\n";
      out << verify_text(report);
    }
    return report.all_pass() ? static_cast<int>(kOk) : static_cast<int>(kUsage);
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evidential multi-attribute group decision-making"};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  GlobalOptions opts;
  std::uint64_t seed = 0;
  app.add_option("--config", opts.config, "Run configuration JSON");
  app.add_option("--out", opts.out, "Output directory")->capture_default_str();
  app.add_flag("--json", opts.json, "Print machine-readable JSON to stdout");
  app.add_flag("--dump-intermediates", opts.dump_intermediates, "Include memberships and BPAs in the outputs");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for subsampling and splits");

  std::vector<std::string> inputs;
  auto* rank = app.add_subcommand("rank", "Rank alternatives from per-expert decision-matrix CSVs");
  rank->add_option("inputs", inputs, "Expert CSV files or one directory")->required();
  rank->fallthrough();

  std::string manifest;
  auto* fuse = app.add_subcommand("fuse-features", "Estimate source weights, fuse features, classify");
  fuse->add_option("manifest", manifest, "Manifest JSON")->required();
  fuse->fallthrough();

  auto* verify = app.add_subcommand("verify-paper", "Recompute the recruitment example and compare");
  verify->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  if (seed_opt->count() > 0) opts.seed = seed;

  if (*rank) return cmd_rank(inputs, opts, out, err);
  if (*fuse) return cmd_fuse_features(manifest, opts, out, err);
  return cmd_verify_paper(opts, out, err);
}

}  // namespace emagdm::cli
