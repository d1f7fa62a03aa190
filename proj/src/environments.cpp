#include "ssp/environments.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "ssp/rng.hpp"

namespace ssp {

TabularSsp make_gridworld() {
  constexpr std::size_t kCells = kGridRows * kGridCols;
  constexpr std::size_t kGoalCell = kCells - 1;
  constexpr std::size_t S = kCells - 1;
  constexpr std::size_t A = 4;
  constexpr std::array<int, 4> kDr{0, 0, -1, 1};
  constexpr std::array<int, 4> kDc{-1, 1, 0, 0};

  RowMatrix p = RowMatrix::Zero(S * A, S + 1);
  for (std::size_t cell = 0; cell < S; ++cell) {
    const int r = static_cast<int>(cell / kGridCols);
    const int c = static_cast<int>(cell % kGridCols);
    for (std::size_t a = 0; a < A; ++a) {
      for (std::size_t d = 0; d < 4; ++d) {
        const double mass = d == a ? kGridIntendedProb : kGridSlipProb;
        const int nr = r + kDr[d];
        const int nc = c + kDc[d];
        std::size_t target = cell;
        if (nr >= 0 && nr < static_cast<int>(kGridRows) && nc >= 0 &&
            nc < static_cast<int>(kGridCols)) {
          target = static_cast<std::size_t>(nr) * kGridCols + static_cast<std::size_t>(nc);
        }
        const std::size_t column = target == kGoalCell ? S : target;
        p(static_cast<Eigen::Index>(cell * A + a), static_cast<Eigen::Index>(column)) += mass;
      }
    }
  }
  return TabularSsp(S, A, 0, std::move(p), Matrix::Ones(S, A), CostKind::kDeterministic, 1.0);
}

TabularSsp make_random_mdp(std::uint64_t seed, std::size_t num_states, std::size_t num_actions,
                           CostKind cost_kind) {
  if (num_states == 0 || num_actions == 0) {
    throw std::invalid_argument("random MDP needs at least one state and action");
  }
  Rng rng = make_rng(seed, RngStream::kEnvironment);
  const auto S = static_cast<Eigen::Index>(num_states);
  const auto A = static_cast<Eigen::Index>(num_actions);
  RowMatrix p(S * A, S + 1);
  Matrix costs(S, A);
  for (Eigen::Index s = 0; s < S; ++s) {
    for (Eigen::Index a = 0; a < A; ++a) {
      auto row = p.row(s * A + a);
      do {
        // Normalized unit exponentials are uniform on the simplex.
        for (Eigen::Index k = 0; k <= S; ++k) row(k) = -std::log1p(-uniform01(rng));
        row /= row.sum();
      } while (row(S) < 1e-6);
      costs(s, a) = uniform01(rng);
    }
  }
  const double c_min = costs.minCoeff();
  return TabularSsp(num_states, num_actions, 0, std::move(p), std::move(costs), cost_kind, c_min);
}

TabularSsp make_chain(double p_goal, double cost) {
  if (!(p_goal > 0.0 && p_goal <= 1.0)) throw std::invalid_argument("p_goal must lie in (0, 1]");
  if (!(cost > 0.0 && cost <= 1.0)) throw std::invalid_argument("cost must lie in (0, 1]");
  RowMatrix p(1, 2);
  p << 1.0 - p_goal, p_goal;
  Matrix c(1, 1);
  c << cost;
  return TabularSsp(1, 1, 0, std::move(p), std::move(c), CostKind::kDeterministic, cost);
}

}  // namespace ssp
