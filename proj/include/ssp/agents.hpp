#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssp/mdp.hpp"
#include "ssp/rng.hpp"
#include "ssp/schedule.hpp"

namespace ssp {

/// Bookkeeping shared by all learners. `row_work` counts table entries
/// touched by row-level operations inside observe (recomputing V(s) or an
/// expectation over successors); per-step accumulator arithmetic is not
/// counted.
struct AgentStats {
  std::uint64_t observes = 0;
  std::uint64_t updates = 0;
  std::uint64_t row_work = 0;
  CountMatrix visits;        // S x A
  CountMatrix pair_updates;  // S x A

  AgentStats() = default;
  AgentStats(std::size_t num_states, std::size_t num_actions)
      : visits(CountMatrix::Zero(num_states, num_actions)),
        pair_updates(CountMatrix::Zero(num_states, num_actions)) {}
};

/// Learner driven by the episode loop: act greedily on an internal Q table,
/// then fold the observed transition into it.
class Agent {
 public:
  virtual ~Agent() = default;

  virtual std::string_view name() const = 0;
  virtual ActionIndex select_action(StateIndex s) = 0;
  virtual void observe(StateIndex s, ActionIndex a, double cost, Outcome next) = 0;

  virtual const Matrix& q() const = 0;
  virtual const Vector& v() const = 0;
  virtual const AgentStats& stats() const = 0;
};

enum class IotaMode { kTuned, kTheoretical };

std::string to_string(IotaMode mode);
IotaMode iota_mode_from_string(const std::string& name);

struct LcbConfig {
  std::uint64_t horizon = 5;
  std::uint64_t theta_star = 4096;
  double delta = 0.1;
  IotaMode iota_mode = IotaMode::kTuned;
  double iota = 0.1;
  /// Upper bound used inside the theoretical log term; the running bound B
  /// when unset.
  std::optional<double> b_tilde;
};

/// Model-free learner with reference-advantage variance reduction. Each pair
/// keeps global accumulators over all its visits and local accumulators over
/// the current stage; Q(s, a) moves only at stage ends of the lcb schedule.
class LcbAdvantageAgent final : public Agent {
 public:
  LcbAdvantageAgent(std::size_t num_states, std::size_t num_actions, LcbConfig config);

  std::string_view name() const override { return "lcb"; }
  ActionIndex select_action(StateIndex s) override;
  void observe(StateIndex s, ActionIndex a, double cost, Outcome next) override;

  const Matrix& q() const override { return q_; }
  const Vector& v() const override { return v_; }
  const AgentStats& stats() const override { return stats_; }

  const LcbConfig& config() const { return config_; }
  double value_bound() const { return b_; }
  const Vector& v_ref() const { return v_ref_; }
  const Matrix& cost_sum() const { return cost_sum_; }
  const Matrix& mu_ref() const { return mu_ref_; }
  const Matrix& sigma_ref() const { return sigma_ref_; }
  const Matrix& mu() const { return mu_; }
  const Matrix& sigma() const { return sigma_; }
  const Matrix& v_sum() const { return v_sum_; }
  const CountMatrix& stage_visits() const { return stage_visits_; }
  double iota(std::uint64_t n) const;

 private:
  std::size_t num_states_;
  std::size_t num_actions_;
  LcbConfig config_;
  StageSchedule schedule_;
  std::vector<ScheduleCursor> cursors_;
  double b_ = 1.0;

  Matrix q_;
  Vector v_;
  Vector v_ref_;
  Matrix cost_sum_;
  Matrix mu_ref_;
  Matrix sigma_ref_;
  Matrix mu_;
  Matrix sigma_;
  Matrix v_sum_;
  CountMatrix stage_visits_;
  std::vector<std::uint64_t> state_visits_;
  AgentStats stats_;
};

struct SviConfig {
  std::uint64_t horizon = 10;
  /// Value-function upper bound in the 49 B iota / n bonus term.
  double b = 1.0;
  double delta = 0.1;
  IotaMode iota_mode = IotaMode::kTuned;
  double iota = 0.01;
  /// Multiplier of ln(2 S A n / delta) in theoretical mode.
  double iota_scale = 20.0;
};

/// Model-based learner doing one-step Bellman backups on the empirical model
/// with a Bernstein-style bonus, only at stage ends of the svi schedule.
class SviAgent final : public Agent {
 public:
  SviAgent(std::size_t num_states, std::size_t num_actions, SviConfig config);

  std::string_view name() const override { return "svi"; }
  ActionIndex select_action(StateIndex s) override;
  void observe(StateIndex s, ActionIndex a, double cost, Outcome next) override;

  const Matrix& q() const override { return q_; }
  const Vector& v() const override { return v_; }
  const AgentStats& stats() const override { return stats_; }

  const SviConfig& config() const { return config_; }
  /// (S*A) x (S+1) successor counts; goal is the last column.
  const CountMatrix& transition_counts() const { return next_counts_; }
  /// Empirical rows as of each pair's latest update (zero before the first).
  const RowMatrix& empirical_transitions() const { return p_bar_; }
  const Matrix& cost_sum() const { return cost_sum_; }
  double iota(std::uint64_t n) const;

 private:
  std::size_t num_states_;
  std::size_t num_actions_;
  SviConfig config_;
  StageSchedule schedule_;
  std::vector<ScheduleCursor> cursors_;

  Matrix q_;
  Vector v_;
  Vector v_ext_;  // V with V(goal) = 0 appended
  Matrix cost_sum_;
  CountMatrix next_counts_;
  RowMatrix p_bar_;
  AgentStats stats_;
};

struct EpsGreedyConfig {
  double epsilon = 0.05;
};

/// Tabular Q-learning for SSP: target c + min_a' Q(s', a'), step size
/// 1 / (1 + visits), epsilon-greedy action choice.
class EpsGreedyAgent final : public Agent {
 public:
  EpsGreedyAgent(std::size_t num_states, std::size_t num_actions, EpsGreedyConfig config,
                 std::uint64_t seed);

  std::string_view name() const override { return "epsgreedy"; }
  ActionIndex select_action(StateIndex s) override;
  void observe(StateIndex s, ActionIndex a, double cost, Outcome next) override;

  const Matrix& q() const override { return q_; }
  const Vector& v() const override { return v_; }
  const AgentStats& stats() const override { return stats_; }

 private:
  std::size_t num_actions_;
  EpsGreedyConfig config_;
  Rng rng_;
  Matrix q_;
  Vector v_;
  AgentStats stats_;
};

/// Restart rule for the doubling wrapper. A new epoch starts when
/// max_s V(s) > B or the epoch cost exceeds K B + x (B sqrt(S A K) + B S^2 A).
struct DoublingRule {
  std::uint64_t episodes = 1;  // K
  std::size_t num_states = 1;  // counts the goal
  std::size_t num_actions = 1;
  double x = std::numeric_limits<double>::infinity();
  double c_min = 1.0;
  /// Defaults to sqrt(K) / (S^{3/2} A^{1/2}).
  std::optional<double> initial_b;

  double default_initial_b() const;
  double start_b() const { return initial_b.value_or(default_initial_b()); }
  /// ceil_2((4 B / c_min) ln(4 B^2 S A K / c_min)), at least 1.
  std::uint64_t horizon_for(double b) const;
  double cost_threshold(double b) const;
};

using InnerAgentFactory = std::function<std::unique_ptr<Agent>(double b, std::uint64_t horizon)>;

/// Runs a fresh inner learner per epoch, doubling the value bound B on every
/// restart.
class DoublingAgent final : public Agent {
 public:
  DoublingAgent(InnerAgentFactory factory, DoublingRule rule);

  std::string_view name() const override { return inner_->name(); }
  ActionIndex select_action(StateIndex s) override { return inner_->select_action(s); }
  void observe(StateIndex s, ActionIndex a, double cost, Outcome next) override;

  const Matrix& q() const override { return inner_->q(); }
  const Vector& v() const override { return inner_->v(); }
  /// Statistics of the current epoch's learner.
  const AgentStats& stats() const override { return inner_->stats(); }

  std::size_t epochs() const { return epochs_; }
  double value_bound() const { return b_; }
  std::uint64_t horizon() const { return horizon_; }
  double epoch_cost() const { return epoch_cost_; }
  const Agent& inner() const { return *inner_; }

 private:
  InnerAgentFactory factory_;
  DoublingRule rule_;
  double b_;
  std::uint64_t horizon_;
  double epoch_cost_ = 0.0;
  std::size_t epochs_ = 1;
  std::unique_ptr<Agent> inner_;
};

enum class Algorithm { kLcb, kSvi, kEpsGreedy };

std::string to_string(Algorithm algorithm);
Algorithm algorithm_from_string(const std::string& name);

/// Agent block of an experiment file.
struct AgentConfig {
  Algorithm algorithm = Algorithm::kSvi;
  std::uint64_t horizon = 10;
  std::uint64_t theta_star = 4096;
  IotaMode iota_mode = IotaMode::kTuned;
  double iota = 0.01;
  double delta = 0.1;
  double epsilon = 0.05;
  std::optional<double> b;
  bool doubling = false;
  double doubling_x = std::numeric_limits<double>::infinity();

  /// Default hyperparameters per algorithm.
  static AgentConfig defaults_for(Algorithm algorithm);
};

/// Environment facts an agent may be built from.
struct AgentContext {
  std::size_t num_states = 0;  // non-goal
  std::size_t num_actions = 0;
  double c_min = 0.0;
  std::uint64_t episodes = 1;
};

std::unique_ptr<Agent> make_agent(const AgentConfig& config, const AgentContext& context,
                                  std::uint64_t seed);

}  // namespace ssp
