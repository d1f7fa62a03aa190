#include "ssp/solver.hpp"

#include <cmath>
#include <deque>
#include <string>

namespace ssp {

NonConvergence::NonConvergence(std::size_t iters, double res)
    : std::runtime_error("value iteration did not converge after " + std::to_string(iters) +
                         " iterations (residual " + std::to_string(res) + ")"),
      iterations(iters),
      residual(res) {}

OptimalSolution solve_optimal(const TabularSsp& mdp, double tol, std::size_t max_iters) {
  if (!(tol > 0.0)) throw std::invalid_argument("solver tolerance must be positive");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(mdp.num_states()));
  double residual = std::numeric_limits<double>::infinity();
  std::size_t iter = 0;
  while (iter < max_iters) {
    Vector next = greedy_values(bellman_q(mdp, v));
    residual = (next - v).cwiseAbs().maxCoeff();
    v = std::move(next);
    ++iter;
    if (residual < tol) break;
  }
  if (!(residual < tol)) throw NonConvergence(iter, residual);

  OptimalSolution sol;
  sol.q_star = bellman_q(mdp, v);
  sol.v_star = greedy_values(sol.q_star);
  sol.b_star = sol.v_star.maxCoeff();
  sol.iterations = iter;
  sol.residual = residual;
  return sol;
}

FiniteHorizonTables finite_horizon(const TabularSsp& mdp, std::size_t horizon) {
  if (horizon == 0) throw std::invalid_argument("horizon must be at least 1");
  std::vector<Matrix> q;
  std::vector<Vector> v;
  q.reserve(horizon);
  v.reserve(horizon + 1);
  v.push_back(Vector::Zero(static_cast<Eigen::Index>(mdp.num_states())));
  for (std::size_t h = 1; h <= horizon; ++h) {
    q.push_back(bellman_q(mdp, v.back()));
    v.push_back(greedy_values(q.back()));
  }
  return FiniteHorizonTables(std::move(q), std::move(v));
}

FiniteHorizonTables finite_horizon(const TabularSsp& mdp, const OptimalSolution& solution,
                                   std::size_t horizon) {
  if (solution.q_star.rows() != static_cast<Eigen::Index>(mdp.num_states()) ||
      solution.q_star.cols() != static_cast<Eigen::Index>(mdp.num_actions())) {
    throw SolverMismatch("solution shape does not match the MDP");
  }
  return finite_horizon(mdp, horizon);
}

std::uint64_t ceil_pow2(double x) {
  std::uint64_t p = 1;
  while (static_cast<double>(p) < x) p <<= 1;
  return p;
}

std::uint64_t theoretical_horizon(double b_star, double c_min, double beta) {
  if (!(c_min > 0.0)) throw std::invalid_argument("c_min must be positive; clip costs first");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
  return ceil_pow2(4.0 * b_star / c_min * std::log(2.0 / beta) + 1.0);
}

ProperReport check_proper(const TabularSsp& mdp) {
  const std::size_t S = mdp.num_states();
  const std::size_t A = mdp.num_actions();
  // Backward search from the goal over the support graph.
  std::vector<std::vector<StateIndex>> predecessors(S + 1);
  for (StateIndex s = 0; s < S; ++s) {
    for (ActionIndex a = 0; a < A; ++a) {
      const auto row = mdp.transition_row(s, a);
      for (Eigen::Index k = 0; k < row.size(); ++k) {
        if (row(k) > 0.0) predecessors[static_cast<std::size_t>(k)].push_back(s);
      }
    }
  }
  std::vector<bool> reaches(S + 1, false);
  std::deque<std::size_t> frontier{S};
  reaches[S] = true;
  while (!frontier.empty()) {
    const std::size_t node = frontier.front();
    frontier.pop_front();
    for (StateIndex pred : predecessors[node]) {
      if (!reaches[pred]) {
        reaches[pred] = true;
        frontier.push_back(pred);
      }
    }
  }
  ProperReport report;
  for (StateIndex s = 0; s < S; ++s) {
    if (!reaches[s]) report.unreachable.push_back(s);
  }
  report.proper = report.unreachable.empty();
  return report;
}

}  // namespace ssp
