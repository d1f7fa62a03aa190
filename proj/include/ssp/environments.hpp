#pragma once

#include <cstdint>

#include "ssp/mdp.hpp"

namespace ssp {

/// GridWorld actions, in index order.
enum class GridAction : ActionIndex { kLeft = 0, kRight = 1, kUp = 2, kDown = 3 };

inline constexpr std::size_t kGridRows = 3;
inline constexpr std::size_t kGridCols = 4;
inline constexpr double kGridIntendedProb = 0.85;
inline constexpr double kGridSlipProb = 0.05;

/// 3x4 grid, start in the upper-left cell, goal in the lower-right cell.
/// Non-goal state index is row * 4 + col. Each action moves in the intended
/// direction w.p. 0.85 and in each other direction w.p. 0.05; moves off the
/// grid leave the agent in place. Every step costs 1.
TabularSsp make_gridworld();

/// Random instance: Dirichlet(1, ..., 1) rows over the S non-goal states plus
/// the goal, Uniform(0, 1) mean costs, c_min = smallest mean. Rows whose goal
/// mass is below 1e-6 are redrawn.
TabularSsp make_random_mdp(std::uint64_t seed, std::size_t num_states = 5,
                           std::size_t num_actions = 2,
                           CostKind cost_kind = CostKind::kDeterministic);

/// One state, one action: goal w.p. p_goal, otherwise stay. V* = cost / p_goal.
TabularSsp make_chain(double p_goal, double cost);

}  // namespace ssp
