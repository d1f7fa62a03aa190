#include <cmath>

#include "ssp/agents.hpp"
#include "ssp/solver.hpp"

namespace ssp {

double DoublingRule::default_initial_b() const {
  const double s = static_cast<double>(num_states);
  const double a = static_cast<double>(num_actions);
  return std::sqrt(static_cast<double>(episodes)) / (std::pow(s, 1.5) * std::sqrt(a));
}

std::uint64_t DoublingRule::horizon_for(double b) const {
  const double sak = static_cast<double>(num_states * num_actions) * static_cast<double>(episodes);
  return ceil_pow2(4.0 * b / c_min * std::log(4.0 * b * b * sak / c_min));
}

double DoublingRule::cost_threshold(double b) const {
  const double s = static_cast<double>(num_states);
  const double a = static_cast<double>(num_actions);
  const double k = static_cast<double>(episodes);
  return k * b + x * (b * std::sqrt(s * a * k) + b * s * s * a);
}

DoublingAgent::DoublingAgent(InnerAgentFactory factory, DoublingRule rule)
    : factory_(std::move(factory)), rule_(rule) {
  if (!(rule_.c_min > 0.0)) throw std::invalid_argument("doubling wrapper needs c_min > 0");
  b_ = rule_.start_b();
  if (!(b_ > 0.0)) throw std::invalid_argument("initial value bound must be positive");
  horizon_ = rule_.horizon_for(b_);
  inner_ = factory_(b_, horizon_);
}

void DoublingAgent::observe(StateIndex s, ActionIndex a, double cost, Outcome next) {
  inner_->observe(s, a, cost, next);
  epoch_cost_ += cost;
  const double v_max = inner_->v().size() > 0 ? inner_->v().maxCoeff() : 0.0;
  if (v_max > b_ || epoch_cost_ > rule_.cost_threshold(b_)) {
    b_ *= 2.0;
    horizon_ = rule_.horizon_for(b_);
    inner_ = factory_(b_, horizon_);
    epoch_cost_ = 0.0;
    ++epochs_;
  }
}

}  // namespace ssp
