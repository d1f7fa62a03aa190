#include "ssp/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ssp {

std::string to_string(CostKind kind) {
  switch (kind) {
    case CostKind::kDeterministic:
      return "deterministic";
    case CostKind::kTwoPoint:
      return "two_point";
  }
  return "deterministic";
}

CostKind cost_kind_from_string(const std::string& name) {
  if (name == "deterministic") return CostKind::kDeterministic;
  if (name == "two_point") return CostKind::kTwoPoint;
  throw InvalidMdp("unknown cost_kind '" + name + "'");
}

double sample_cost(const CostModel& model, Rng& rng) {
  if (model.kind == CostKind::kDeterministic || model.c_min >= 1.0) return model.mean;
  const double p_high = (model.mean - model.c_min) / (1.0 - model.c_min);
  return uniform01(rng) < p_high ? 1.0 : model.c_min;
}

TabularSsp::TabularSsp(std::size_t num_states, std::size_t num_actions, StateIndex init_state,
                       RowMatrix transitions, Matrix cost_means, CostKind cost_kind, double c_min)
    : num_states_(num_states),
      num_actions_(num_actions),
      init_state_(init_state),
      transitions_(std::move(transitions)),
      cost_means_(std::move(cost_means)),
      cost_kind_(cost_kind),
      c_min_(c_min) {
  validate();
  cumulative_.resize(transitions_.rows(), transitions_.cols());
  for (Eigen::Index r = 0; r < transitions_.rows(); ++r) {
    double acc = 0.0;
    for (Eigen::Index c = 0; c < transitions_.cols(); ++c) {
      acc += transitions_(r, c);
      cumulative_(r, c) = acc;
    }
  }
}

void TabularSsp::validate() const {
  if (num_states_ == 0 || num_actions_ == 0) throw InvalidMdp("MDP needs at least one state and action");
  if (init_state_ >= num_states_) throw InvalidMdp("init_state out of range");
  const auto rows = static_cast<Eigen::Index>(num_states_ * num_actions_);
  const auto cols = static_cast<Eigen::Index>(num_states_ + 1);
  if (transitions_.rows() != rows || transitions_.cols() != cols) {
    throw InvalidMdp("transition matrix must be (S*A) x (S+1)");
  }
  if (cost_means_.rows() != static_cast<Eigen::Index>(num_states_) ||
      cost_means_.cols() != static_cast<Eigen::Index>(num_actions_)) {
    throw InvalidMdp("cost matrix must be S x A");
  }
  if (!(c_min_ >= 0.0 && c_min_ <= 1.0)) throw InvalidMdp("c_min must lie in [0, 1]");
  for (Eigen::Index r = 0; r < rows; ++r) {
    if ((transitions_.row(r).array() < 0.0).any() || !transitions_.row(r).allFinite()) {
      throw InvalidMdp("transition row " + std::to_string(r) + " has a negative entry");
    }
    if (std::abs(transitions_.row(r).sum() - 1.0) > 1e-12) {
      throw InvalidMdp("transition row " + std::to_string(r) + " does not sum to 1");
    }
  }
  if ((cost_means_.array() < c_min_).any() || (cost_means_.array() > 1.0).any()) {
    throw InvalidMdp("mean costs must lie in [c_min, 1]");
  }
}

Outcome TabularSsp::sample_transition(StateIndex s, ActionIndex a, Rng& rng) const {
  const auto row = cumulative_.row(row_index(s, a));
  const double u = uniform01(rng);
  // First index whose cumulative mass exceeds u; zero-mass outcomes are never picked.
  const auto* begin = row.data();
  const auto* end = begin + row.size();
  auto it = std::upper_bound(begin, end, u);
  // Rounding can leave the last cumulative entry a hair below 1.
  if (it == end) {
    it = end - 1;
    while (it != begin && *it == *(it - 1)) --it;
  }
  const auto idx = static_cast<std::size_t>(it - begin);
  return idx == num_states_ ? Outcome{} : Outcome{idx};
}

bool operator==(const TabularSsp& lhs, const TabularSsp& rhs) {
  return lhs.num_states_ == rhs.num_states_ && lhs.num_actions_ == rhs.num_actions_ &&
         lhs.init_state_ == rhs.init_state_ && lhs.cost_kind_ == rhs.cost_kind_ &&
         lhs.c_min_ == rhs.c_min_ && lhs.transitions_ == rhs.transitions_ &&
         lhs.cost_means_ == rhs.cost_means_;
}

TabularSsp clip_costs(const TabularSsp& mdp, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("clip epsilon must lie in (0, 1]");
  }
  if (epsilon <= mdp.c_min()) return mdp;
  Matrix means = mdp.cost_means();
  if (mdp.cost_kind() == CostKind::kDeterministic) {
    means = means.cwiseMax(epsilon);
  } else {
    // Push the two-point law through c -> max(c, eps): the high value stays 1,
    // the low value becomes eps, and the probability of 1 is unchanged.
    const double low = mdp.c_min();
    for (Eigen::Index i = 0; i < means.size(); ++i) {
      const double p_high = low >= 1.0 ? 1.0 : (means(i) - low) / (1.0 - low);
      means(i) = std::min(1.0, p_high + (1.0 - p_high) * epsilon);
    }
  }
  return TabularSsp(mdp.num_states(), mdp.num_actions(), mdp.init_state(), mdp.transitions(),
                    std::move(means), mdp.cost_kind(), epsilon);
}

nlohmann::json to_json(const TabularSsp& mdp) {
  const std::size_t S = mdp.num_states();
  const std::size_t A = mdp.num_actions();
  nlohmann::json transitions = nlohmann::json::array();
  nlohmann::json costs = nlohmann::json::array();
  for (std::size_t s = 0; s < S; ++s) {
    nlohmann::json per_action = nlohmann::json::array();
    nlohmann::json cost_row = nlohmann::json::array();
    for (std::size_t a = 0; a < A; ++a) {
      const auto row = mdp.transition_row(s, a);
      per_action.push_back(std::vector<double>(row.data(), row.data() + row.size()));
      cost_row.push_back(mdp.cost_means()(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(a)));
    }
    transitions.push_back(std::move(per_action));
    costs.push_back(std::move(cost_row));
  }
  return {{"num_states", S},
          {"num_actions", A},
          {"init_state", mdp.init_state()},
          {"transitions", std::move(transitions)},
          {"costs", std::move(costs)},
          {"cost_kind", to_string(mdp.cost_kind())},
          {"c_min", mdp.c_min()}};
}

TabularSsp mdp_from_json(const nlohmann::json& doc) {
  try {
    const auto S = doc.at("num_states").get<std::size_t>();
    const auto A = doc.at("num_actions").get<std::size_t>();
    const auto init = doc.at("init_state").get<std::size_t>();
    const auto& transitions = doc.at("transitions");
    const auto& costs = doc.at("costs");
    if (transitions.size() != S || costs.size() != S) throw InvalidMdp("expected one entry per state");
    RowMatrix p(static_cast<Eigen::Index>(S * A), static_cast<Eigen::Index>(S + 1));
    Matrix c(static_cast<Eigen::Index>(S), static_cast<Eigen::Index>(A));
    for (std::size_t s = 0; s < S; ++s) {
      if (transitions[s].size() != A || costs[s].size() != A) {
        throw InvalidMdp("expected one entry per action in state " + std::to_string(s));
      }
      for (std::size_t a = 0; a < A; ++a) {
        const auto& row = transitions[s][a];
        if (row.size() != S + 1) throw InvalidMdp("transition rows need S+1 entries");
        for (std::size_t k = 0; k <= S; ++k) {
          p(static_cast<Eigen::Index>(s * A + a), static_cast<Eigen::Index>(k)) = row[k].get<double>();
        }
        c(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(a)) = costs[s][a].get<double>();
      }
    }
    return TabularSsp(S, A, init, std::move(p), std::move(c),
                      cost_kind_from_string(doc.value("cost_kind", std::string("deterministic"))),
                      doc.at("c_min").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidMdp(std::string("malformed MDP document: ") + e.what());
  }
}

void save_mdp(const TabularSsp& mdp, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << to_json(mdp).dump(2) << '\n';
}

TabularSsp load_mdp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidMdp(std::string("malformed MDP document: ") + e.what());
  }
  return mdp_from_json(doc);
}

}  // namespace ssp
