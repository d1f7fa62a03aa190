#include <cmath>

#include "ssp/agents.hpp"

namespace ssp {

SviAgent::SviAgent(std::size_t num_states, std::size_t num_actions, SviConfig config)
    : num_states_(num_states),
      num_actions_(num_actions),
      config_(config),
      schedule_(ScheduleFamily::kSvi, config.horizon),
      cursors_(num_states * num_actions),
      q_(Matrix::Zero(num_states, num_actions)),
      v_(Vector::Zero(num_states)),
      v_ext_(Vector::Zero(num_states + 1)),
      cost_sum_(Matrix::Zero(num_states, num_actions)),
      next_counts_(CountMatrix::Zero(num_states * num_actions, num_states + 1)),
      p_bar_(RowMatrix::Zero(num_states * num_actions, num_states + 1)),
      stats_(num_states, num_actions) {
  if (!(config.delta > 0.0 && config.delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (!(config.b > 0.0)) throw std::invalid_argument("value bound B must be positive");
  if (config.iota_mode == IotaMode::kTuned && !(config.iota >= 0.0)) {
    throw std::invalid_argument("iota must be non-negative");
  }
}

double SviAgent::iota(std::uint64_t n) const {
  if (config_.iota_mode == IotaMode::kTuned) return config_.iota;
  const double sa = static_cast<double>((num_states_ + 1) * num_actions_);
  return config_.iota_scale * std::log(2.0 * sa * static_cast<double>(n) / config_.delta);
}

ActionIndex SviAgent::select_action(StateIndex s) {
  return static_cast<ActionIndex>(argmin_low(q_.row(static_cast<Eigen::Index>(s))));
}

void SviAgent::observe(StateIndex s, ActionIndex a, double cost, Outcome next) {
  const auto si = static_cast<Eigen::Index>(s);
  const auto ai = static_cast<Eigen::Index>(a);
  const auto row = static_cast<Eigen::Index>(s * num_actions_ + a);
  ++stats_.observes;

  const std::uint64_t n = ++stats_.visits(si, ai);
  const auto column =
      static_cast<Eigen::Index>(next.is_goal() ? num_states_ : next.state);
  ++next_counts_(row, column);
  cost_sum_(si, ai) += cost;

  if (!cursors_[s * num_actions_ + a].advance(schedule_, n)) return;

  const double nd = static_cast<double>(n);
  p_bar_.row(row) = next_counts_.row(row).cast<double>() / nd;
  const auto p = p_bar_.row(row);
  const double mean_next = p.dot(v_ext_);
  const double variance = std::max(p.dot(v_ext_.cwiseAbs2()) - mean_next * mean_next, 0.0);
  const double io = iota(n);
  const double c_hat = cost_sum_(si, ai) / nd;
  const double bonus = std::max(7.0 * std::sqrt(variance * io / nd), 49.0 * config_.b * io / nd) +
                       std::sqrt(c_hat * io / nd);

  double& q = q_(si, ai);
  q = std::max(c_hat + mean_next - bonus, q);
  v_(si) = q_.row(si).minCoeff();
  v_ext_(si) = v_(si);
  stats_.row_work += (num_states_ + 1) + num_actions_;
  ++stats_.updates;
  ++stats_.pair_updates(si, ai);
}

}  // namespace ssp
