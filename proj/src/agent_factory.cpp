#include <stdexcept>

#include "ssp/agents.hpp"

namespace ssp {

std::string to_string(IotaMode mode) {
  return mode == IotaMode::kTuned ? "tuned" : "theoretical";
}

IotaMode iota_mode_from_string(const std::string& name) {
  if (name == "tuned") return IotaMode::kTuned;
  if (name == "theoretical") return IotaMode::kTheoretical;
  throw std::invalid_argument("unknown iota_mode '" + name + "'");
}

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kLcb:
      return "lcb";
    case Algorithm::kSvi:
      return "svi";
    case Algorithm::kEpsGreedy:
      return "epsgreedy";
  }
  return "svi";
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "lcb") return Algorithm::kLcb;
  if (name == "svi") return Algorithm::kSvi;
  if (name == "epsgreedy") return Algorithm::kEpsGreedy;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

AgentConfig AgentConfig::defaults_for(Algorithm algorithm) {
  AgentConfig config;
  config.algorithm = algorithm;
  switch (algorithm) {
    case Algorithm::kLcb:
      config.horizon = 5;
      config.iota = 0.1;
      config.theta_star = 4096;
      break;
    case Algorithm::kSvi:
      config.horizon = 10;
      config.iota = 0.01;
      break;
    case Algorithm::kEpsGreedy:
      config.epsilon = 0.05;
      break;
  }
  return config;
}

namespace {

LcbConfig lcb_config(const AgentConfig& config) {
  LcbConfig lcb;
  lcb.horizon = config.horizon;
  lcb.theta_star = config.theta_star;
  lcb.delta = config.delta;
  lcb.iota_mode = config.iota_mode;
  lcb.iota = config.iota;
  lcb.b_tilde = config.b;
  return lcb;
}

SviConfig svi_config(const AgentConfig& config) {
  SviConfig svi;
  svi.horizon = config.horizon;
  svi.b = config.b.value_or(SviConfig{}.b);
  svi.delta = config.delta;
  svi.iota_mode = config.iota_mode;
  svi.iota = config.iota;
  return svi;
}

}  // namespace

std::unique_ptr<Agent> make_agent(const AgentConfig& config, const AgentContext& context,
                                  std::uint64_t seed) {
  const std::size_t S = context.num_states;
  const std::size_t A = context.num_actions;
  if (config.algorithm == Algorithm::kEpsGreedy) {
    return std::make_unique<EpsGreedyAgent>(S, A, EpsGreedyConfig{config.epsilon}, seed);
  }
  if (config.horizon == 0) throw std::invalid_argument("H must be at least 1");

  if (!config.doubling) {
    if (config.algorithm == Algorithm::kLcb) {
      return std::make_unique<LcbAdvantageAgent>(S, A, lcb_config(config));
    }
    return std::make_unique<SviAgent>(S, A, svi_config(config));
  }

  DoublingRule rule;
  rule.episodes = context.episodes;
  rule.num_states = S + 1;
  rule.num_actions = A;
  rule.x = config.doubling_x;
  rule.c_min = context.c_min;
  rule.initial_b = config.b;
  InnerAgentFactory factory;
  if (config.algorithm == Algorithm::kLcb) {
    factory = [S, A, base = lcb_config(config)](double b, std::uint64_t horizon) {
      LcbConfig lcb = base;
      lcb.horizon = horizon;
      lcb.b_tilde = b;
      return std::unique_ptr<Agent>(std::make_unique<LcbAdvantageAgent>(S, A, lcb));
    };
  } else {
    factory = [S, A, base = svi_config(config)](double b, std::uint64_t horizon) {
      SviConfig svi = base;
      svi.horizon = horizon;
      svi.b = b;
      return std::unique_ptr<Agent>(std::make_unique<SviAgent>(S, A, svi));
    };
  }
  return std::make_unique<DoublingAgent>(std::move(factory), rule);
}

}  // namespace ssp
