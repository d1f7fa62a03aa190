// Acceptance suite: prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ssp/environments.hpp"
#include "ssp/io.hpp"
#include "ssp/schedule.hpp"
#include "ssp/solver.hpp"

using namespace ssp;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& text) {
    if (!detail.empty()) detail += "; ";
    detail += text;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

Verdict gridworld_ground_truth() {
  Verdict out;
  const auto start = Clock::now();
  const TabularSsp grid = make_gridworld();
  const OptimalSolution sol = solve_optimal(grid);
  const double elapsed = seconds_since(start);
  out.require(sol.b_star >= 5.5 && sol.b_star <= 6.5, "b_star outside [5.5, 6.5]");
  out.require(grid.c_min() == 1.0, "c_min != 1");
  out.require(elapsed < 1.0, "took >= 1 s");
  out.note("b_star=" + fmt("%.6f", sol.b_star) + " c_min=" + fmt("%g", grid.c_min()) +
           " time=" + fmt("%.3fs", elapsed));
  return out;
}

Verdict finite_horizon_sandwich() {
  Verdict out;
  const auto start = Clock::now();
  const TabularSsp grid = make_gridworld();
  // Value iteration climbs monotonically from zero through the same recursion
  // as the finite-horizon tables; iterate to an exact floating-point fixed
  // point so the lower side of the sandwich is not decided by solver slack.
  const OptimalSolution sol = solve_optimal(grid, std::numeric_limits<double>::denorm_min());
  constexpr double kBeta = 0.01;
  const std::uint64_t H = theoretical_horizon(sol.b_star, 1.0, kBeta);
  const FiniteHorizonTables tables = finite_horizon(grid, sol, H);
  const Matrix gap = sol.q_star - tables.q(H);
  const double elapsed = seconds_since(start);
  out.require(gap.minCoeff() >= 0.0, "Q* - Q*_H has a negative entry");
  out.require(gap.maxCoeff() <= sol.b_star * kBeta + 1e-9, "gap exceeds b_star * beta");
  out.require(elapsed < 5.0, "took >= 5 s");
  out.note("H=" + std::to_string(H) + " gap in [" + fmt("%.3g", gap.minCoeff()) + ", " +
           fmt("%.3g", gap.maxCoeff()) + "] bound=" + fmt("%.4g", sol.b_star * kBeta) +
           " time=" + fmt("%.3fs", elapsed));
  return out;
}

Verdict schedule_certification() {
  Verdict out;
  const auto start = Clock::now();
  constexpr std::uint64_t kN = 1'000'000;
  for (std::uint64_t H : {2u, 5u, 10u, 50u}) {
    StageSchedule svi(ScheduleFamily::kSvi, H);
    for (std::size_t j = 1; j <= H; ++j) {
      out.require(svi.stage_length(j) == 1, "svi e_j != 1 for j <= H=" + std::to_string(H));
    }
    for (ScheduleFamily family : {ScheduleFamily::kSvi, ScheduleFamily::kLcb}) {
      StageSchedule schedule(family, H);
      ScheduleCursor cursor;
      bool ok = true;
      for (std::uint64_t n = 1; n <= kN && ok; ++n) {
        cursor.advance(schedule, n);
        const double bound = 3.0 * static_cast<double>(H) * std::log(static_cast<double>(n) + 1.0) +
                             static_cast<double>(H) + 1.0;
        ok = static_cast<double>(cursor.stages_completed()) <= bound;
      }
      out.require(ok, to_string(family) + " count bound fails for H=" + std::to_string(H));
      out.require(schedule.stage_end_count(kN) == cursor.stages_completed(),
                  "cursor disagrees with stage_end_count");
    }
  }
  StageSchedule lcb(ScheduleFamily::kLcb, 2);
  const std::vector<std::uint64_t> expected{2, 5, 9, 15, 24};
  for (std::size_t j = 1; j <= expected.size(); ++j) {
    out.require(lcb.stage_end(j) == expected[j - 1], "lcb H=2 prefix mismatch");
  }
  const double elapsed = seconds_since(start);
  out.require(elapsed < 5.0, "took >= 5 s");
  out.note("time=" + fmt("%.3fs", elapsed));
  return out;
}

Verdict oracle_equivalence() {
  Verdict out;
  double worst = 0.0;
  for (double p : {1.0, 0.5, 0.25}) {
    for (double c : {1.0, 0.5}) {
      const double v = solve_optimal(make_chain(p, c)).v_star(0);
      worst = std::max(worst, std::abs(v - c / p));
    }
  }
  out.require(worst <= 1e-8, "chain value differs from c/p");
  double worst_linear = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t S = 2 + seed % 5;
    const std::size_t A = 2 + seed % 2;
    const TabularSsp mdp = make_random_mdp(1000 + seed, S, A);
    const OptimalSolution sol = solve_optimal(mdp);
    const Vector v = testing::policy_value_linear(mdp, testing::greedy_policy(sol.q_star));
    worst_linear = std::max(worst_linear, (v - sol.v_star).cwiseAbs().maxCoeff());
  }
  out.require(worst_linear <= 1e-8, "value iteration differs from the linear solve");
  out.note("chain err=" + fmt("%.2g", worst) + " linear err=" + fmt("%.2g", worst_linear));
  return out;
}

struct RegretRun {
  std::optional<ExperimentResult> result;
  double seconds = 0.0;
  // Sparsity checks over the SVI runs.
  bool counts_exact = true;
  bool total_bounded = true;
  double worst_total_ratio = 0.0;
};

RegretRun run_gridworld_regret() {
  ExperimentConfig config;
  config.env.name = "gridworld";
  config.agents = {AgentConfig::defaults_for(Algorithm::kLcb),
                   AgentConfig::defaults_for(Algorithm::kSvi),
                   AgentConfig::defaults_for(Algorithm::kEpsGreedy)};
  config.episodes = 3000;
  config.num_runs = 50;
  config.base_seed = 2024;

  RegretRun run;
  const auto hook = [&](std::size_t agent_index, const Agent& agent, const RegretSeries& series) {
    if (agent_index != 1) return;
    const std::uint64_t H = config.agents[1].horizon;
    StageSchedule schedule(ScheduleFamily::kSvi, H);
    const AgentStats& stats = agent.stats();
    std::uint64_t total = 0;
    for (Eigen::Index s = 0; s < stats.visits.rows(); ++s) {
      for (Eigen::Index a = 0; a < stats.visits.cols(); ++a) {
        if (stats.pair_updates(s, a) != schedule.stage_end_count(stats.visits(s, a))) {
          run.counts_exact = false;
        }
        total += stats.pair_updates(s, a);
      }
    }
    const double T = static_cast<double>(series.total_steps());
    const double SA = static_cast<double>(stats.visits.rows() * stats.visits.cols());
    const double bound = 3.0 * SA * static_cast<double>(H) * std::log(T + 1.0);
    run.worst_total_ratio = std::max(run.worst_total_ratio, static_cast<double>(total) / bound);
    if (static_cast<double>(total) > bound) run.total_bounded = false;
  };
  const auto start = Clock::now();
  run.result = run_experiment(config, hook);
  run.seconds = seconds_since(start);
  return run;
}

Verdict regret_reproduction(const RegretRun& run) {
  Verdict out;
  const auto& agents = run.result->agents;
  const SlopeTest lcb = slope_test(agents[0].stats.mean_regret);
  const SlopeTest svi = slope_test(agents[1].stats.mean_regret);
  const SlopeTest eps = slope_test(agents[2].stats.mean_regret);
  const double lcb_final = agents[0].stats.mean_regret.back();
  const double svi_final = agents[1].stats.mean_regret.back();
  const double eps_final = agents[2].stats.mean_regret.back();
  out.require(lcb.ratio >= 2.0, "(a) lcb slope ratio < 2");
  out.require(svi.ratio >= 2.0, "(a) svi slope ratio < 2");
  out.require(eps.ratio <= 1.3, "(b) epsgreedy slope ratio > 1.3");
  out.require(svi_final < eps_final, "(c) svi final regret >= epsgreedy");
  out.require(lcb_final < eps_final, "(c) lcb final regret >= epsgreedy");
  out.require(run.seconds < 600.0, "took >= 10 min");
  out.note("ratios lcb=" + fmt("%.3g", lcb.ratio) + " svi=" + fmt("%.3g", svi.ratio) +
           " epsgreedy=" + fmt("%.3g", eps.ratio) + "; final regret lcb=" + fmt("%.1f", lcb_final) +
           " svi=" + fmt("%.1f", svi_final) + " epsgreedy=" + fmt("%.1f", eps_final) +
           "; time=" + fmt("%.2fs", run.seconds));
  return out;
}

Verdict update_sparsity(const RegretRun& run) {
  Verdict out;
  out.require(run.counts_exact, "per-pair update count != stage_end_count");
  out.require(run.total_bounded, "total updates exceed 3 S A H ln(T+1)");
  out.note("max total/bound=" + fmt("%.3g", run.worst_total_ratio));
  return out;
}

Verdict optimism_monitoring() {
  Verdict out;
  const TabularSsp grid = make_gridworld();
  const OptimalSolution sol = solve_optimal(grid);
  const AgentContext context{11, 4, 1.0, 500};
  const auto start = Clock::now();
  for (Algorithm algorithm : {Algorithm::kLcb, Algorithm::kSvi}) {
    AgentConfig config = AgentConfig::defaults_for(algorithm);
    config.iota_mode = IotaMode::kTheoretical;
    config.delta = 0.1;
    std::uint64_t steps = 0;
    std::uint64_t violations = 0;
    std::uint64_t decreases = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto agent = make_agent(config, context, seed);
      Matrix previous = agent->q();
      TrialOptions options;
      options.episodes = 500;
      options.observer = [&](const StepRecord& step, const Agent& a) {
        const Matrix& q = a.q();
        decreases += static_cast<std::uint64_t>((q.array() < previous.array()).count());
        previous = q;
        ++steps;
        const auto s = static_cast<Eigen::Index>(step.state);
        const auto act = static_cast<Eigen::Index>(step.action);
        if (q(s, act) > sol.q_star(s, act) + 1e-9) ++violations;
      };
      run_trial(grid, sol, *agent, options, seed);
      decreases += static_cast<std::uint64_t>((agent->q().array() < previous.array()).count());
    }
    const double fraction = static_cast<double>(violations) / static_cast<double>(steps);
    const std::string name = to_string(algorithm);
    out.require(fraction <= 0.01, name + " optimism violated on > 1% of steps");
    out.require(decreases == 0, name + " Q decreased");
    out.note(name + " violations=" + fmt("%.3g", fraction) + " decreases=" +
             std::to_string(decreases) + " steps=" + std::to_string(steps));
  }
  out.note("time=" + fmt("%.2fs", seconds_since(start)));
  return out;
}

Verdict determinism() {
  Verdict out;
  const fs::path dir = fs::temp_directory_path() / "ssp_acceptance_determinism";
  fs::create_directories(dir);
  const nlohmann::json doc = nlohmann::json::parse(R"({
    "env": {"name": "random", "seed": 3, "cost_kind": "two_point"},
    "agents": [{"algorithm": "lcb"}, {"algorithm": "svi", "doubling": {"enabled": true}},
               {"algorithm": "epsgreedy"}],
    "K": 200, "num_runs": 8, "base_seed": 11
  })");
  {
    std::ofstream cfg(dir / "config.json");
    cfg << doc.dump(2);
  }
  std::ostringstream err;
  const int rc_a = cmd_run(dir / "config.json", dir / "a.csv", {false, 1}, err);
  const int rc_b = cmd_run(dir / "config.json", dir / "b.csv", {false, 0}, err);
  out.require(rc_a == kExitOk && rc_b == kExitOk, "ssp run failed: " + err.str());
  auto slurp = [](const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string a = slurp(dir / "a.csv");
  out.require(!a.empty() && a == slurp(dir / "b.csv"), "CSV outputs differ");
  out.note(std::to_string(a.size()) + " bytes identical across thread counts");
  fs::remove_all(dir);
  return out;
}

Verdict random_mdp_plausibility() {
  Verdict out;
  std::vector<double> b_star;
  std::vector<double> c_min;
  std::size_t improper = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const TabularSsp mdp = make_random_mdp(seed);
    if (!check_proper(mdp).proper) ++improper;
    b_star.push_back(solve_optimal(mdp).b_star);
    c_min.push_back(mdp.c_min());
  }
  auto median = [](std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    return 0.5 * (xs[xs.size() / 2 - 1] + xs[xs.size() / 2]);
  };
  const double mb = median(b_star);
  const double mc = median(c_min);
  out.require(improper == 0, std::to_string(improper) + " improper instances");
  out.require(mb >= 0.5 && mb <= 4.0, "median b_star outside [0.5, 4]");
  out.require(mc >= 0.005 && mc <= 0.2, "median c_min outside [0.005, 0.2]");
  out.note("median b_star=" + fmt("%.4g", mb) + " median c_min=" + fmt("%.4g", mc));
  return out;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const std::function<Verdict()>& check) {
    Verdict result;
    try {
      result = check();
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail = std::string("exception: ") + e.what();
    }
    if (!result.pass) ++failures;
    std::printf("criterion %d: %s (%s)\n", id, result.pass ? "PASS" : "FAIL", result.detail.c_str());
    std::fflush(stdout);
  };

  report(1, gridworld_ground_truth);
  report(2, finite_horizon_sandwich);
  report(3, schedule_certification);
  report(4, oracle_equivalence);
  RegretRun regret;
  bool regret_ok = true;
  std::string regret_error;
  try {
    regret = run_gridworld_regret();
  } catch (const std::exception& e) {
    regret_ok = false;
    regret_error = e.what();
  }
  report(5, [&] {
    if (!regret_ok) throw std::runtime_error(regret_error);
    return regret_reproduction(regret);
  });
  report(6, [&] {
    if (!regret_ok) throw std::runtime_error(regret_error);
    return update_sparsity(regret);
  });
  report(7, optimism_monitoring);
  report(8, determinism);
  report(9, random_mdp_plausibility);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
