#include "ssp/agents.hpp"

namespace ssp {

EpsGreedyAgent::EpsGreedyAgent(std::size_t num_states, std::size_t num_actions,
                               EpsGreedyConfig config, std::uint64_t seed)
    : num_actions_(num_actions),
      config_(config),
      rng_(make_rng(seed, RngStream::kAgent)),
      q_(Matrix::Zero(num_states, num_actions)),
      v_(Vector::Zero(num_states)),
      stats_(num_states, num_actions) {
  if (!(config.epsilon >= 0.0 && config.epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 1]");
  }
}

ActionIndex EpsGreedyAgent::select_action(StateIndex s) {
  if (config_.epsilon > 0.0 && uniform01(rng_) < config_.epsilon) {
    return static_cast<ActionIndex>(uniform_index(rng_, num_actions_));
  }
  return static_cast<ActionIndex>(argmin_low(q_.row(static_cast<Eigen::Index>(s))));
}

void EpsGreedyAgent::observe(StateIndex s, ActionIndex a, double cost, Outcome next) {
  const auto si = static_cast<Eigen::Index>(s);
  const auto ai = static_cast<Eigen::Index>(a);
  ++stats_.observes;
  const std::uint64_t visits = ++stats_.visits(si, ai);
  const double alpha = 1.0 / (1.0 + static_cast<double>(visits));
  const double target = cost + (next.is_goal() ? 0.0 : v_(static_cast<Eigen::Index>(next.state)));
  q_(si, ai) = (1.0 - alpha) * q_(si, ai) + alpha * target;
  v_(si) = q_.row(si).minCoeff();
  stats_.row_work += num_actions_;
  ++stats_.updates;
  ++stats_.pair_updates(si, ai);
}

}  // namespace ssp
