#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "ssp/rng.hpp"
#include "ssp/types.hpp"

namespace ssp {

class InvalidMdp : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class CostKind { kDeterministic, kTwoPoint };

std::string to_string(CostKind kind);
CostKind cost_kind_from_string(const std::string& name);

/// Distribution of the per-step cost of one (s, a) pair. Two-point costs take
/// the values c_min and 1 with the probability of 1 chosen to match `mean`.
struct CostModel {
  CostKind kind = CostKind::kDeterministic;
  double mean = 0.0;
  double c_min = 0.0;
};

double sample_cost(const CostModel& model, Rng& rng);

/// Outcome of a transition: a non-goal state index, or the goal.
struct Outcome {
  static constexpr StateIndex kGoal = static_cast<StateIndex>(-1);
  StateIndex state = kGoal;

  bool is_goal() const { return state == kGoal; }
  friend bool operator==(Outcome, Outcome) = default;
};

/// One step of the concatenated trajectory.
struct StepRecord {
  std::uint64_t t = 0;
  StateIndex state = 0;
  ActionIndex action = 0;
  double cost = 0.0;
  Outcome next;
};

/// Tabular stochastic shortest path problem.
///
/// States 0..S-1 are the non-goal states; the goal is outcome column S of the
/// transition matrix and has no row of its own. Row s*A + a of `transitions()`
/// is the next-outcome distribution of the pair (s, a).
class TabularSsp {
 public:
  TabularSsp(std::size_t num_states, std::size_t num_actions, StateIndex init_state,
             RowMatrix transitions, Matrix cost_means, CostKind cost_kind, double c_min);

  std::size_t num_states() const { return num_states_; }
  /// States including the goal.
  std::size_t num_states_with_goal() const { return num_states_ + 1; }
  std::size_t num_actions() const { return num_actions_; }
  std::size_t goal_index() const { return num_states_; }
  StateIndex init_state() const { return init_state_; }
  double c_min() const { return c_min_; }
  CostKind cost_kind() const { return cost_kind_; }

  const RowMatrix& transitions() const { return transitions_; }
  /// S x A matrix of mean costs.
  const Matrix& cost_means() const { return cost_means_; }

  Eigen::Index row_index(StateIndex s, ActionIndex a) const {
    return static_cast<Eigen::Index>(s * num_actions_ + a);
  }
  auto transition_row(StateIndex s, ActionIndex a) const {
    return transitions_.row(row_index(s, a));
  }
  /// Probabilities restricted to non-goal successors.
  auto transition_row_states(StateIndex s, ActionIndex a) const {
    return transitions_.row(row_index(s, a)).head(static_cast<Eigen::Index>(num_states_));
  }
  CostModel cost_model(StateIndex s, ActionIndex a) const {
    return {cost_kind_, cost_means_(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(a)),
            c_min_};
  }

  Outcome sample_transition(StateIndex s, ActionIndex a, Rng& rng) const;

  friend bool operator==(const TabularSsp& lhs, const TabularSsp& rhs);

 private:
  void validate() const;

  std::size_t num_states_;
  std::size_t num_actions_;
  StateIndex init_state_;
  RowMatrix transitions_;
  RowMatrix cumulative_;
  Matrix cost_means_;
  CostKind cost_kind_;
  double c_min_;
};

inline Outcome sample_transition(const TabularSsp& mdp, StateIndex s, ActionIndex a, Rng& rng) {
  return mdp.sample_transition(s, a, rng);
}

/// Raises every mean cost (and c_min) to at least epsilon.
TabularSsp clip_costs(const TabularSsp& mdp, double epsilon);

/// Q(s, a) = c(s, a) + sum_s' P(s'|s, a) v(s'), with v(goal) = 0.
template <typename Derived>
Matrix bellman_q(const TabularSsp& mdp, const Eigen::MatrixBase<Derived>& v) {
  const auto S = static_cast<Eigen::Index>(mdp.num_states());
  const auto A = static_cast<Eigen::Index>(mdp.num_actions());
  const Vector next = mdp.transitions().leftCols(S) * v;
  return mdp.cost_means() + next.reshaped<Eigen::RowMajor>(S, A);
}

nlohmann::json to_json(const TabularSsp& mdp);
TabularSsp mdp_from_json(const nlohmann::json& doc);
void save_mdp(const TabularSsp& mdp, const std::filesystem::path& path);
TabularSsp load_mdp(const std::filesystem::path& path);

}  // namespace ssp
