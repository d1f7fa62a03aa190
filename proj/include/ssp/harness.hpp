#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssp/agents.hpp"
#include "ssp/mdp.hpp"
#include "ssp/solver.hpp"

namespace ssp {

/// Which environment an experiment runs on.
struct EnvSpec {
  std::string name = "gridworld";  // gridworld | random | chain | file
  std::uint64_t seed = 0;          // random
  std::size_t num_states = 5;      // random
  std::size_t num_actions = 2;     // random
  CostKind cost_kind = CostKind::kDeterministic;  // random
  double p_goal = 1.0;             // chain
  double cost = 1.0;               // chain
  std::string path;                // file
};

TabularSsp build_environment(const EnvSpec& spec);

inline constexpr std::uint64_t kDefaultEpisodeStepCap = 1'000'000;

struct ExperimentConfig {
  EnvSpec env;
  std::vector<AgentConfig> agents;
  std::uint64_t episodes = 1;  // K
  std::size_t num_runs = 1;
  std::uint64_t base_seed = 0;
  std::uint64_t episode_step_cap = kDefaultEpisodeStepCap;
  double clip_epsilon = 0.0;  // 0 disables clipping
  /// Measure wall time inside observe. Off by default so output is
  /// reproducible byte for byte.
  bool record_timing = false;
  /// Worker threads for independent runs; 0 picks the hardware concurrency.
  std::size_t threads = 0;

  void validate() const;
};

struct EpisodeRecord {
  std::uint64_t steps = 0;
  double cost = 0.0;
  double cum_cost = 0.0;
  double cum_regret = 0.0;
  bool truncated = false;
  std::uint64_t update_time_ns = 0;  // cumulative over the run
};

/// Per-episode record of one seeded run.
struct RegretSeries {
  std::size_t run_id = 0;
  std::uint64_t seed = 0;
  std::string algorithm;
  std::string env;
  double v_star_init = 0.0;
  std::vector<EpisodeRecord> episodes;

  std::uint64_t total_steps() const;
  std::size_t truncated_count() const;
  double final_regret() const { return episodes.empty() ? 0.0 : episodes.back().cum_regret; }
};

/// Called before every observe with the step about to be fed to the agent.
using StepObserver = std::function<void(const StepRecord&, const Agent&)>;

struct TrialOptions {
  std::uint64_t episodes = 1;
  std::uint64_t episode_step_cap = kDefaultEpisodeStepCap;
  double clip_epsilon = 0.0;
  bool record_timing = false;
  StepObserver observer;

  static TrialOptions from(const ExperimentConfig& config);
};

/// Plays `options.episodes` episodes of `agent` on `mdp`. Regret is measured
/// against `solution`, which must solve the MDP the agent actually faces
/// (the clipped one when clipping is on).
RegretSeries run_trial(const TabularSsp& mdp, const OptimalSolution& solution, Agent& agent,
                       const TrialOptions& options, std::uint64_t seed);

struct AggregateStats {
  std::vector<double> mean_regret;     // per episode
  std::vector<double> ci_half_width;   // 1.96 sd / sqrt(runs); 0 for one run
};

AggregateStats aggregate(const std::vector<RegretSeries>& runs);

struct AgentRuns {
  AgentConfig config;
  std::vector<RegretSeries> runs;  // ordered by run index
  AggregateStats stats;
};

struct ExperimentResult {
  TabularSsp mdp;  // environment the agents faced
  OptimalSolution solution;
  std::vector<AgentRuns> agents;
};

class TrialError : public std::runtime_error {
 public:
  TrialError(std::size_t run, const std::string& what)
      : std::runtime_error("run " + std::to_string(run) + ": " + what), run_index(run) {}
  std::size_t run_index;
};

/// Invoked once per finished run (serialized across worker threads).
using TrialHook =
    std::function<void(std::size_t agent_index, const Agent& agent, const RegretSeries& series)>;

ExperimentResult run_experiment(const ExperimentConfig& config, const TrialHook& hook = {});

struct SlopeTest {
  double early_rate = 0.0;
  double late_rate = 0.0;
  double ratio = 0.0;
};

/// Compares mean per-episode regret over the first and last sixths of a
/// cumulative regret curve. ratio is +inf when the late rate is <= 0.
SlopeTest slope_test(const std::vector<double>& cumulative_regret);

}  // namespace ssp
