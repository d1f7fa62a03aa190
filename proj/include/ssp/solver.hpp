#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ssp/mdp.hpp"

namespace ssp {

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(std::size_t iterations, double residual);
  std::size_t iterations;
  double residual;
};

class SolverMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OptimalSolution {
  Vector v_star;  // non-goal states; V*(goal) = 0
  Matrix q_star;  // S x A
  double b_star = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;

  double v_init(const TabularSsp& mdp) const {
    return v_star(static_cast<Eigen::Index>(mdp.init_state()));
  }
};

/// Optimal values of the h-step truncated problem (act h steps, then jump to
/// the goal) for h = 0..H.
class FiniteHorizonTables {
 public:
  FiniteHorizonTables(std::vector<Matrix> q, std::vector<Vector> v)
      : q_(std::move(q)), v_(std::move(v)) {}

  std::size_t horizon() const { return q_.size(); }
  /// h in [1, H].
  const Matrix& q(std::size_t h) const { return q_.at(h - 1); }
  /// h in [0, H]; v(0) is identically zero.
  const Vector& v(std::size_t h) const { return v_.at(h); }

 private:
  std::vector<Matrix> q_;
  std::vector<Vector> v_;
};

struct ProperReport {
  bool proper = false;
  std::vector<StateIndex> unreachable;  // states with no positive-probability path to the goal
};

inline constexpr double kDefaultSolverTol = 1e-10;
inline constexpr std::size_t kDefaultSolverMaxIters = 10'000'000;

/// Value iteration for the SSP Bellman operator starting at V = 0. Iterates
/// are monotone nondecreasing; stops once the sup-norm change is below tol.
OptimalSolution solve_optimal(const TabularSsp& mdp, double tol = kDefaultSolverTol,
                              std::size_t max_iters = kDefaultSolverMaxIters);

FiniteHorizonTables finite_horizon(const TabularSsp& mdp, std::size_t horizon);
/// Same as above; additionally checks that `solution` matches mdp's shape.
FiniteHorizonTables finite_horizon(const TabularSsp& mdp, const OptimalSolution& solution,
                                   std::size_t horizon);

/// Smallest power of two that is >= x (x <= 1 maps to 1).
std::uint64_t ceil_pow2(double x);

/// Power-of-two horizon H >= (4 B / c_min) ln(2 / beta) + 1 for which the
/// h-step values are within B * beta of Q*.
std::uint64_t theoretical_horizon(double b_star, double c_min, double beta);

ProperReport check_proper(const TabularSsp& mdp);

/// Row-wise minimum of a Q table (S x A -> S).
template <typename Derived>
Vector greedy_values(const Eigen::MatrixBase<Derived>& q) {
  return q.rowwise().minCoeff();
}

}  // namespace ssp
