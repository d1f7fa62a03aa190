// Command-line front end: run experiments, plot regret, solve and generate
// environments, print stage schedules.

#include <iostream>

#include "CLI11.hpp"
#include "ssp/io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Regret experiments for stochastic shortest path learners"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  ssp::RunOptions run_options;
  auto* run = app.add_subcommand("run", "Run an experiment file and write per-episode CSV");
  run->add_option("--config", config_path, "Experiment JSON")->required();
  run->add_option("--out", out_path, "Output CSV")->required();
  run->add_flag("--timing", run_options.record_timing,
                "Record wall time spent in agent updates (output is then not reproducible)");
  run->add_option("--threads", run_options.threads, "Worker threads (0 = all cores)");

  std::vector<std::string> csv_paths;
  std::string svg_path;
  auto* plot = app.add_subcommand("plot", "Plot mean cumulative regret with 95% bands");
  plot->add_option("csv", csv_paths, "Result CSVs")->required();
  plot->add_option("--out", svg_path, "Output SVG")->required();

  std::string mdp_path;
  double tol = ssp::kDefaultSolverTol;
  auto* solve = app.add_subcommand("solve", "Solve an MDP file exactly");
  solve->add_option("--mdp", mdp_path, "MDP JSON")->required();
  solve->add_option("--tol", tol, "Sup-norm stopping tolerance");

  ssp::EnvSpec env;
  std::string env_out;
  std::string cost_kind = "deterministic";
  auto* env_cmd = app.add_subcommand("env", "Write a bundled environment as MDP JSON");
  env_cmd->add_option("--name", env.name, "gridworld | random | chain")
      ->required()
      ->check(CLI::IsMember({"gridworld", "random", "chain"}));
  env_cmd->add_option("--seed", env.seed, "Seed for random instances");
  env_cmd->add_option("--states", env.num_states, "Non-goal states (random)");
  env_cmd->add_option("--actions", env.num_actions, "Actions (random)");
  env_cmd->add_option("--cost-kind", cost_kind, "deterministic | two_point (random)")
      ->check(CLI::IsMember({"deterministic", "two_point"}));
  env_cmd->add_option("--p-goal", env.p_goal, "Goal probability (chain)");
  env_cmd->add_option("--cost", env.cost, "Step cost (chain)");
  env_cmd->add_option("--out", env_out, "Output file")->required();

  std::string family;
  std::uint64_t horizon = 1;
  std::uint64_t upto = 1000;
  auto* schedule = app.add_subcommand("schedule", "Print stage lengths and ends as CSV");
  schedule->add_option("--family", family, "lcb | svi")
      ->required()
      ->check(CLI::IsMember({"lcb", "svi"}));
  schedule->add_option("--H", horizon, "Horizon parameter")->required();
  schedule->add_option("--upto", upto, "Largest stage end to print");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ssp::kExitInvalidInput;
  }

  if (*run) return ssp::cmd_run(config_path, out_path, run_options, std::cerr);
  if (*plot) {
    return ssp::cmd_plot({csv_paths.begin(), csv_paths.end()}, svg_path, std::cerr);
  }
  if (*solve) return ssp::cmd_solve(mdp_path, tol, std::cout, std::cerr);
  if (*env_cmd) {
    env.cost_kind = ssp::cost_kind_from_string(cost_kind);
    return ssp::cmd_env(env, env_out, std::cerr);
  }
  return ssp::cmd_schedule(family, horizon, upto, std::cout, std::cerr);
}
