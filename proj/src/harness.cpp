#include "ssp/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "ssp/environments.hpp"

namespace ssp {

TabularSsp build_environment(const EnvSpec& spec) {
  if (spec.name == "gridworld") return make_gridworld();
  if (spec.name == "random") {
    return make_random_mdp(spec.seed, spec.num_states, spec.num_actions, spec.cost_kind);
  }
  if (spec.name == "chain") return make_chain(spec.p_goal, spec.cost);
  if (spec.name == "file") return load_mdp(spec.path);
  throw std::invalid_argument("unknown environment '" + spec.name + "'");
}

void ExperimentConfig::validate() const {
  if (episodes < 1) throw std::invalid_argument("K must be at least 1");
  if (num_runs < 1) throw std::invalid_argument("num_runs must be at least 1");
  if (episode_step_cap < 1) throw std::invalid_argument("episode_step_cap must be at least 1");
  if (!(clip_epsilon >= 0.0 && clip_epsilon <= 1.0)) {
    throw std::invalid_argument("clip_epsilon must lie in [0, 1]");
  }
  if (agents.empty()) throw std::invalid_argument("at least one agent is required");
}

std::uint64_t RegretSeries::total_steps() const {
  std::uint64_t total = 0;
  for (const auto& e : episodes) total += e.steps;
  return total;
}

std::size_t RegretSeries::truncated_count() const {
  std::size_t count = 0;
  for (const auto& e : episodes) count += e.truncated ? 1 : 0;
  return count;
}

TrialOptions TrialOptions::from(const ExperimentConfig& config) {
  TrialOptions options;
  options.episodes = config.episodes;
  options.episode_step_cap = config.episode_step_cap;
  options.clip_epsilon = config.clip_epsilon;
  options.record_timing = config.record_timing;
  return options;
}

RegretSeries run_trial(const TabularSsp& mdp, const OptimalSolution& solution, Agent& agent,
                       const TrialOptions& options, std::uint64_t seed) {
  if (solution.v_star.size() != static_cast<Eigen::Index>(mdp.num_states()) ||
      solution.q_star.cols() != static_cast<Eigen::Index>(mdp.num_actions())) {
    throw SolverMismatch("solution shape does not match the MDP");
  }
  using Clock = std::chrono::steady_clock;
  Rng rng = make_rng(seed, RngStream::kTrajectory);

  RegretSeries series;
  series.seed = seed;
  series.algorithm = std::string(agent.name());
  series.v_star_init = solution.v_init(mdp);
  series.episodes.reserve(options.episodes);

  std::uint64_t t = 0;
  double cum_cost = 0.0;
  std::uint64_t update_ns = 0;
  for (std::uint64_t k = 1; k <= options.episodes; ++k) {
    EpisodeRecord episode;
    StateIndex s = mdp.init_state();
    while (true) {
      const ActionIndex a = agent.select_action(s);
      double c = sample_cost(mdp.cost_model(s, a), rng);
      if (options.clip_epsilon > 0.0) c = std::max(c, options.clip_epsilon);
      const Outcome next = mdp.sample_transition(s, a, rng);
      ++t;
      if (options.observer) options.observer(StepRecord{t, s, a, c, next}, agent);

      if (options.record_timing) {
        const auto start = Clock::now();
        agent.observe(s, a, c, next);
        update_ns += static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
      } else {
        agent.observe(s, a, c, next);
      }
      ++episode.steps;
      episode.cost += c;
      if (next.is_goal()) break;
      if (episode.steps >= options.episode_step_cap) {
        episode.truncated = true;
        break;
      }
      s = next.state;
    }
    cum_cost += episode.cost;
    episode.cum_cost = cum_cost;
    episode.cum_regret = cum_cost - static_cast<double>(k) * series.v_star_init;
    episode.update_time_ns = update_ns;
    series.episodes.push_back(episode);
  }
  return series;
}

AggregateStats aggregate(const std::vector<RegretSeries>& runs) {
  AggregateStats stats;
  if (runs.empty()) return stats;
  const std::size_t K = runs.front().episodes.size();
  for (const auto& r : runs) {
    if (r.episodes.size() != K) throw std::invalid_argument("runs differ in episode count");
  }
  const double n = static_cast<double>(runs.size());
  stats.mean_regret.resize(K);
  stats.ci_half_width.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    double sum = 0.0;
    for (const auto& r : runs) sum += r.episodes[k].cum_regret;
    const double mean = sum / n;
    double sq = 0.0;
    for (const auto& r : runs) {
      const double d = r.episodes[k].cum_regret - mean;
      sq += d * d;
    }
    stats.mean_regret[k] = mean;
    stats.ci_half_width[k] = runs.size() > 1 ? 1.96 * std::sqrt(sq / (n - 1.0)) / std::sqrt(n) : 0.0;
  }
  return stats;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const TrialHook& hook) {
  config.validate();
  const TabularSsp raw = build_environment(config.env);
  TabularSsp faced = config.clip_epsilon > 0.0 ? clip_costs(raw, config.clip_epsilon) : raw;
  OptimalSolution solution = solve_optimal(faced);

  AgentContext context{raw.num_states(), raw.num_actions(), faced.c_min(), config.episodes};
  const TrialOptions options = TrialOptions::from(config);

  ExperimentResult result{faced, solution, {}};
  std::mutex hook_mutex;
  for (std::size_t agent_index = 0; agent_index < config.agents.size(); ++agent_index) {
    const AgentConfig& agent_config = config.agents[agent_index];
    std::vector<RegretSeries> runs(config.num_runs);
    std::vector<std::exception_ptr> errors(config.num_runs);
    std::atomic<std::size_t> next_run{0};

    auto worker = [&] {
      for (std::size_t i = next_run++; i < config.num_runs; i = next_run++) {
        try {
          const std::uint64_t seed = config.base_seed + i;
          auto agent = make_agent(agent_config, context, seed);
          RegretSeries series = run_trial(raw, solution, *agent, options, seed);
          series.run_id = i;
          series.env = config.env.name;
          if (hook) {
            std::lock_guard lock(hook_mutex);
            hook(agent_index, *agent, series);
          }
          runs[i] = std::move(series);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };

    std::size_t threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
    threads = std::clamp<std::size_t>(threads, 1, config.num_runs);
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    }

    for (std::size_t i = 0; i < config.num_runs; ++i) {
      if (!errors[i]) continue;
      try {
        std::rethrow_exception(errors[i]);
      } catch (const NonConvergence&) {
        throw;
      } catch (const std::exception& e) {
        throw TrialError(i, e.what());
      }
    }
    AggregateStats stats = aggregate(runs);
    result.agents.push_back({agent_config, std::move(runs), std::move(stats)});
  }
  return result;
}

SlopeTest slope_test(const std::vector<double>& cumulative_regret) {
  const std::size_t K = cumulative_regret.size();
  if (K < 1000) throw std::invalid_argument("slope test needs at least 1000 episodes");
  auto regret_at = [&](std::size_t k) { return k == 0 ? 0.0 : cumulative_regret[k - 1]; };
  const std::size_t early_end = K / 6;
  const std::size_t late_begin = 5 * K / 6;
  SlopeTest out;
  out.early_rate = regret_at(early_end) / static_cast<double>(early_end);
  out.late_rate = (regret_at(K) - regret_at(late_begin - 1)) / static_cast<double>(K - late_begin + 1);
  out.ratio = out.late_rate <= 0.0 ? std::numeric_limits<double>::infinity()
                                   : out.early_rate / out.late_rate;
  return out;
}

}  // namespace ssp
