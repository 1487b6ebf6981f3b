#include "cli/config.hpp"

#include <fstream>
#include <set>
#include <type_traits>

#include "emagdm/divergence.hpp"

namespace emagdm::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kKeys = {
    "terms",      "allow_any_term_count", "uniform_on_degenerate", "clamp_out_of_domain", "owa_scheme",
    "owa_orness", "log_base",             "pair_weights",          "wpbl_axis",           "pair_aggregation",
    "average_convention", "zero_divergence", "seed", "train_ratio", "block_size", "sample_cap",
};

template <typename T>
T get(const json& j, const std::string& key) {
  if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
    if (!j.at(key).is_number_unsigned()) throw ConfigError("config key '" + key + "' must be a non-negative integer");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

template <typename Parse>
auto get_enum(const json& j, const std::string& key, Parse parse) {
  const auto text = get<std::string>(j, key);
  try {
    return parse(text);
  } catch (const DomainError& e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

void validate(const RunConfig& c) {
  try {
    steps_for(c.pipeline.membership);
    WeightVector w(c.pipeline.pair_weights);
    if (w.size() != 2) throw DomainError("pair_weights must have length 2");
    if (c.pipeline.owa_scheme == OwaScheme::orness) owa_weights(c.pipeline.membership.terms, OwaScheme::orness, c.pipeline.owa_orness);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  if (!(c.train_ratio > 0.0 && c.train_ratio < 1.0)) throw ConfigError("invalid config: train_ratio must lie in (0, 1)");
  if (c.block_size < 1) throw ConfigError("invalid config: block_size must be >= 1");
  if (c.sample_cap < 2) throw ConfigError("invalid config: sample_cap must be >= 2");
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace

RunConfig parse_run_config(const json& j, RunConfig c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  auto& p = c.pipeline;
  if (j.contains("terms")) p.membership.terms = get<std::size_t>(j, "terms");
  if (j.contains("allow_any_term_count")) p.membership.allow_any_term_count = get<bool>(j, "allow_any_term_count");
  if (j.contains("uniform_on_degenerate")) p.membership.uniform_on_degenerate = get<bool>(j, "uniform_on_degenerate");
  if (j.contains("clamp_out_of_domain")) p.membership.clamp_out_of_domain = get<bool>(j, "clamp_out_of_domain");
  if (j.contains("owa_scheme")) p.owa_scheme = get_enum(j, "owa_scheme", parse_owa_scheme);
  if (j.contains("owa_orness")) p.owa_orness = get<double>(j, "owa_orness");
  if (j.contains("log_base")) p.log_base = get_enum(j, "log_base", parse_log_base);
  if (j.contains("pair_weights")) p.pair_weights = get<std::vector<double>>(j, "pair_weights");
  if (j.contains("wpbl_axis")) p.wpbl_axis = get_enum(j, "wpbl_axis", parse_wpbl_axis);
  if (j.contains("pair_aggregation")) p.pair_aggregation = get_enum(j, "pair_aggregation", parse_pair_aggregation);
  if (j.contains("average_convention")) {
    p.average_convention = get_enum(j, "average_convention", parse_average_convention);
  }
  if (j.contains("zero_divergence")) p.zero_divergence = get_enum(j, "zero_divergence", parse_zero_divergence_policy);
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed");
  if (j.contains("train_ratio")) c.train_ratio = get<double>(j, "train_ratio");
  if (j.contains("block_size")) c.block_size = get<std::size_t>(j, "block_size");
  if (j.contains("sample_cap")) c.sample_cap = get<std::size_t>(j, "sample_cap");
  validate(c);
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path, RunConfig base) {
  try {
    return parse_run_config(read_json(path), std::move(base));
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    if (what.rfind(path.string(), 0) == 0) throw;
    throw ConfigError(path.string() + ": " + what);
  }
}

json to_json(const RunConfig& c) {
  const auto& p = c.pipeline;
  return json{
      {"terms", p.membership.terms},
      {"allow_any_term_count", p.membership.allow_any_term_count},
      {"uniform_on_degenerate", p.membership.uniform_on_degenerate},
      {"clamp_out_of_domain", p.membership.clamp_out_of_domain},
      {"owa_scheme", to_string(p.owa_scheme)},
      {"owa_orness", p.owa_orness},
      {"log_base", to_string(p.log_base)},
      {"pair_weights", p.pair_weights},
      {"wpbl_axis", to_string(p.wpbl_axis)},
      {"pair_aggregation", to_string(p.pair_aggregation)},
      {"average_convention", to_string(p.average_convention)},
      {"zero_divergence", to_string(p.zero_divergence)},
      {"seed", c.seed},
      {"train_ratio", c.train_ratio},
      {"block_size", c.block_size},
      {"sample_cap", c.sample_cap},
  };
}

Manifest load_manifest(const std::filesystem::path& path, RunConfig base) {
  const json j = read_json(path);
  if (!j.is_object()) throw ConfigError(path.string() + ": manifest must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "sources" && key != "config") throw ConfigError(path.string() + ": unknown manifest key '" + key + "'");
  }
  if (!j.contains("sources") || !j.at("sources").is_array()) {
    throw ConfigError(path.string() + ": manifest needs a \"sources\" array");
  }
  Manifest m;
  const auto dir = path.parent_path();
  for (const auto& s : j.at("sources")) {
    Manifest::Source src;
    if (s.is_string()) {
      src.path = s.get<std::string>();
      src.id = src.path.stem().string();
    } else if (s.is_object() && s.contains("path") && s.at("path").is_string()) {
      for (const auto& [key, value] : s.items()) {
        if (key != "id" && key != "path") throw ConfigError(path.string() + ": unknown source key '" + key + "'");
      }
      src.path = s.at("path").get<std::string>();
      src.id = s.contains("id") ? get<std::string>(s, "id") : src.path.stem().string();
    } else {
      throw ConfigError(path.string() + ": each source must be a path or {\"id\", \"path\"}");
    }
    if (src.path.is_relative()) src.path = dir / src.path;
    m.sources.push_back(std::move(src));
  }
  try {
    m.config = j.contains("config") ? parse_run_config(j.at("config"), std::move(base)) : (validate(base), base);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return m;
}

}  // namespace emagdm::cli
