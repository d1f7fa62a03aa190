#include <cmath>

#include "ssp/agents.hpp"

namespace ssp {

namespace {

double clamped_sqrt(double x) { return std::sqrt(std::max(x, 0.0)); }

}  // namespace

LcbAdvantageAgent::LcbAdvantageAgent(std::size_t num_states, std::size_t num_actions,
                                     LcbConfig config)
    : num_states_(num_states),
      num_actions_(num_actions),
      config_(config),
      schedule_(ScheduleFamily::kLcb, config.horizon),
      cursors_(num_states * num_actions),
      q_(Matrix::Zero(num_states, num_actions)),
      v_(Vector::Zero(num_states)),
      v_ref_(Vector::Zero(num_states)),
      cost_sum_(Matrix::Zero(num_states, num_actions)),
      mu_ref_(Matrix::Zero(num_states, num_actions)),
      sigma_ref_(Matrix::Zero(num_states, num_actions)),
      mu_(Matrix::Zero(num_states, num_actions)),
      sigma_(Matrix::Zero(num_states, num_actions)),
      v_sum_(Matrix::Zero(num_states, num_actions)),
      stage_visits_(CountMatrix::Zero(num_states, num_actions)),
      state_visits_(num_states, 0),
      stats_(num_states, num_actions) {
  if (!(config.delta > 0.0 && config.delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (config.iota_mode == IotaMode::kTuned && !(config.iota >= 0.0)) {
    throw std::invalid_argument("iota must be non-negative");
  }
}

double LcbAdvantageAgent::iota(std::uint64_t n) const {
  if (config_.iota_mode == IotaMode::kTuned) return config_.iota;
  // 256 ln^6(4 S A B~^8 n^5 / delta), S counting the goal; evaluated in log space.
  const double b_tilde = config_.b_tilde.value_or(b_);
  const double log_arg = std::log(4.0) + std::log(static_cast<double>((num_states_ + 1) * num_actions_)) +
                         8.0 * std::log(b_tilde) + 5.0 * std::log(static_cast<double>(n)) -
                         std::log(config_.delta);
  return 256.0 * std::pow(log_arg, 6);
}

ActionIndex LcbAdvantageAgent::select_action(StateIndex s) {
  return static_cast<ActionIndex>(argmin_low(q_.row(static_cast<Eigen::Index>(s))));
}

void LcbAdvantageAgent::observe(StateIndex s, ActionIndex a, double cost, Outcome next) {
  const auto si = static_cast<Eigen::Index>(s);
  const auto ai = static_cast<Eigen::Index>(a);
  ++stats_.observes;

  const std::uint64_t n = ++stats_.visits(si, ai);
  const std::uint64_t m = ++stage_visits_(si, ai);
  const double next_v = next.is_goal() ? 0.0 : v_(static_cast<Eigen::Index>(next.state));
  const double next_ref = next.is_goal() ? 0.0 : v_ref_(static_cast<Eigen::Index>(next.state));
  const double advantage = next_v - next_ref;

  cost_sum_(si, ai) += cost;
  mu_ref_(si, ai) += next_ref;
  sigma_ref_(si, ai) += next_ref * next_ref;
  v_sum_(si, ai) += next_v;
  mu_(si, ai) += advantage;
  sigma_(si, ai) += advantage * advantage;

  if (cursors_[s * num_actions_ + a].advance(schedule_, n)) {
    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(m);
    const double io = iota(n);
    const double c_hat = cost_sum_(si, ai) / nd;
    const double cost_bonus = std::sqrt(c_hat * io / nd);
    const double b_prime = 2.0 * std::sqrt(b_ * b_ * io / md) + cost_bonus + io / nd;

    const double ref_mean = mu_ref_(si, ai) / nd;
    const double adv_mean = mu_(si, ai) / md;
    const double bonus = clamped_sqrt((sigma_ref_(si, ai) / nd - ref_mean * ref_mean) * io / nd) +
                         clamped_sqrt((sigma_(si, ai) / md - adv_mean * adv_mean) * io / md) +
                         (4.0 * b_ / nd + 3.0 * b_ / md) * io + cost_bonus;

    double& q = q_(si, ai);
    q = std::max(c_hat + v_sum_(si, ai) / md - b_prime, q);
    q = std::max(c_hat + ref_mean + adv_mean - bonus, q);
    v_(si) = q_.row(si).minCoeff();
    stats_.row_work += num_actions_;
    if (v_(si) > b_) b_ = 2.0 * v_(si);

    v_sum_(si, ai) = 0.0;
    mu_(si, ai) = 0.0;
    sigma_(si, ai) = 0.0;
    stage_visits_(si, ai) = 0;
    ++stats_.updates;
    ++stats_.pair_updates(si, ai);
  }

  const std::uint64_t state_n = ++state_visits_[s];
  if (is_power_of_two(state_n) && state_n <= config_.theta_star) v_ref_(si) = v_(si);
}

}  // namespace ssp
