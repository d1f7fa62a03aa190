#include <fstream>
#include <limits>
#include <set>

#include "ssp/io.hpp"

namespace ssp {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError(path.empty() ? key : path + "." + key, "unknown key");
    }
  }
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw ConfigError(join(path, key), "missing required field");
  return obj.at(key);
}

std::uint64_t get_count(const json& value, const std::string& field) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
    throw ConfigError(field, "expected a non-negative integer");
  }
  return value.get<std::uint64_t>();
}

double get_real(const json& value, const std::string& field) {
  if (!value.is_number()) throw ConfigError(field, "expected a number");
  return value.get<double>();
}

std::string get_string(const json& value, const std::string& field) {
  if (!value.is_string()) throw ConfigError(field, "expected a string");
  return value.get<std::string>();
}

bool get_bool(const json& value, const std::string& field) {
  if (!value.is_boolean()) throw ConfigError(field, "expected true or false");
  return value.get<bool>();
}

EnvSpec parse_env(const json& doc, const std::string& path) {
  if (!doc.is_object()) throw ConfigError(path, "expected an object");
  reject_unknown_keys(doc,
                      {"name", "seed", "num_states", "num_actions", "cost_kind", "p_goal", "cost",
                       "path"},
                      path);
  EnvSpec spec;
  spec.name = get_string(require(doc, "name", path), join(path, "name"));
  if (spec.name != "gridworld" && spec.name != "random" && spec.name != "chain" &&
      spec.name != "file") {
    throw ConfigError(join(path, "name"), "expected gridworld, random, chain or file");
  }
  if (doc.contains("seed")) spec.seed = get_count(doc["seed"], join(path, "seed"));
  if (doc.contains("num_states")) {
    spec.num_states = get_count(doc["num_states"], join(path, "num_states"));
  }
  if (doc.contains("num_actions")) {
    spec.num_actions = get_count(doc["num_actions"], join(path, "num_actions"));
  }
  if (doc.contains("cost_kind")) {
    const std::string field = join(path, "cost_kind");
    try {
      spec.cost_kind = cost_kind_from_string(get_string(doc["cost_kind"], field));
    } catch (const InvalidMdp& e) {
      throw ConfigError(field, e.what());
    }
  }
  if (doc.contains("p_goal")) spec.p_goal = get_real(doc["p_goal"], join(path, "p_goal"));
  if (doc.contains("cost")) spec.cost = get_real(doc["cost"], join(path, "cost"));
  if (spec.name == "file") {
    spec.path = get_string(require(doc, "path", path), join(path, "path"));
  }
  return spec;
}

AgentConfig parse_agent(const json& doc, const std::string& path) {
  if (!doc.is_object()) throw ConfigError(path, "expected an object");
  reject_unknown_keys(doc,
                      {"algorithm", "H", "theta_star", "iota_mode", "iota", "delta", "epsilon",
                       "B", "doubling"},
                      path);
  const std::string algo_field = join(path, "algorithm");
  AgentConfig config;
  try {
    config = AgentConfig::defaults_for(
        algorithm_from_string(get_string(require(doc, "algorithm", path), algo_field)));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(algo_field, e.what());
  }

  if (doc.contains("H")) {
    config.horizon = get_count(doc["H"], join(path, "H"));
    if (config.horizon == 0) throw ConfigError(join(path, "H"), "must be at least 1");
  }
  if (doc.contains("theta_star")) {
    config.theta_star = get_count(doc["theta_star"], join(path, "theta_star"));
  }
  if (doc.contains("iota_mode")) {
    const std::string field = join(path, "iota_mode");
    try {
      config.iota_mode = iota_mode_from_string(get_string(doc["iota_mode"], field));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(field, e.what());
    }
  }
  if (doc.contains("iota")) {
    config.iota = get_real(doc["iota"], join(path, "iota"));
    if (config.iota < 0.0) throw ConfigError(join(path, "iota"), "must be non-negative");
  }
  if (doc.contains("delta")) {
    config.delta = get_real(doc["delta"], join(path, "delta"));
    if (!(config.delta > 0.0 && config.delta < 1.0)) {
      throw ConfigError(join(path, "delta"), "must lie in (0, 1)");
    }
  }
  if (doc.contains("epsilon")) {
    config.epsilon = get_real(doc["epsilon"], join(path, "epsilon"));
    if (!(config.epsilon >= 0.0 && config.epsilon <= 1.0)) {
      throw ConfigError(join(path, "epsilon"), "must lie in [0, 1]");
    }
  }
  if (doc.contains("B") && !doc["B"].is_null()) {
    config.b = get_real(doc["B"], join(path, "B"));
    if (!(*config.b > 0.0)) throw ConfigError(join(path, "B"), "must be positive");
  }
  if (doc.contains("doubling")) {
    const std::string dpath = join(path, "doubling");
    const json& d = doc["doubling"];
    if (!d.is_object()) throw ConfigError(dpath, "expected an object");
    reject_unknown_keys(d, {"enabled", "x"}, dpath);
    if (d.contains("enabled")) config.doubling = get_bool(d["enabled"], join(dpath, "enabled"));
    if (d.contains("x")) {
      const json& x = d["x"];
      if (x.is_null() || (x.is_string() && x.get<std::string>() == "inf")) {
        config.doubling_x = std::numeric_limits<double>::infinity();
      } else {
        config.doubling_x = get_real(x, join(dpath, "x"));
        if (config.doubling_x < 0.0) throw ConfigError(join(dpath, "x"), "must be non-negative");
      }
    }
    if (config.doubling && config.algorithm == Algorithm::kEpsGreedy) {
      throw ConfigError(join(dpath, "enabled"), "doubling applies to lcb and svi only");
    }
  }
  return config;
}

}  // namespace

ExperimentConfig parse_experiment_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("<root>", "expected an object");
  reject_unknown_keys(doc,
                      {"env", "agents", "K", "num_runs", "base_seed", "clip_epsilon",
                       "episode_step_cap"},
                      "");
  ExperimentConfig config;
  config.env = parse_env(require(doc, "env", ""), "env");

  const json& agents = require(doc, "agents", "");
  if (!agents.is_array() || agents.empty()) throw ConfigError("agents", "expected a non-empty array");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    config.agents.push_back(parse_agent(agents[i], "agents[" + std::to_string(i) + "]"));
  }

  config.episodes = get_count(require(doc, "K", ""), "K");
  if (config.episodes < 1) throw ConfigError("K", "must be at least 1");
  config.num_runs = get_count(require(doc, "num_runs", ""), "num_runs");
  if (config.num_runs < 1) throw ConfigError("num_runs", "must be at least 1");
  if (doc.contains("base_seed")) config.base_seed = get_count(doc["base_seed"], "base_seed");
  if (doc.contains("clip_epsilon")) {
    config.clip_epsilon = get_real(doc["clip_epsilon"], "clip_epsilon");
    if (!(config.clip_epsilon >= 0.0 && config.clip_epsilon <= 1.0)) {
      throw ConfigError("clip_epsilon", "must lie in [0, 1]");
    }
  }
  if (doc.contains("episode_step_cap")) {
    config.episode_step_cap = get_count(doc["episode_step_cap"], "episode_step_cap");
    if (config.episode_step_cap < 1) throw ConfigError("episode_step_cap", "must be at least 1");
  }
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("<file>", std::string("not valid JSON: ") + e.what());
  }
  return parse_experiment_config(doc);
}

}  // namespace ssp
