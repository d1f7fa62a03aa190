#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>

#include "ssp/io.hpp"
#include "ssp/schedule.hpp"

namespace ssp {

int cmd_run(const std::filesystem::path& config_path, const std::filesystem::path& out_path,
            const RunOptions& options, std::ostream& err) {
  ExperimentConfig config;
  try {
    config = load_experiment_config(config_path);
  } catch (const ConfigError& e) {
    err << "invalid config: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  config.record_timing = options.record_timing;
  config.threads = options.threads;

  std::optional<ExperimentResult> result;
  try {
    result = run_experiment(config);
  } catch (const NonConvergence& e) {
    err << "solver: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const InvalidMdp& e) {
    err << "invalid environment: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "run failed: " << e.what() << '\n';
    return kExitFailure;
  }

  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    err << "cannot open " << out_path << " for writing\n";
    return kExitFailure;
  }
  write_regret_csv(out, *result);
  return out.good() ? kExitOk : kExitFailure;
}

int cmd_plot(const std::vector<std::filesystem::path>& csv_paths,
             const std::filesystem::path& out_svg, std::ostream& err) {
  std::vector<PlotSeries> plots;
  std::set<std::string> labels;
  for (const auto& path : csv_paths) {
    std::ifstream in(path);
    if (!in) {
      err << "cannot open " << path << '\n';
      return kExitInvalidInput;
    }
    std::vector<RegretSeries> runs;
    try {
      runs = read_regret_csv(in);
    } catch (const CsvError& e) {
      err << path.string() << ": " << e.what() << '\n';
      return kExitInvalidInput;
    }
    if (runs.empty()) {
      err << path.string() << ": no data rows\n";
      return kExitInvalidInput;
    }
    // Group by algorithm, keeping first-appearance order.
    std::vector<std::string> order;
    std::map<std::string, std::vector<RegretSeries>> groups;
    for (auto& run : runs) {
      if (!groups.contains(run.algorithm)) order.push_back(run.algorithm);
      groups[run.algorithm].push_back(std::move(run));
    }
    for (const auto& algorithm : order) {
      AggregateStats stats;
      try {
        stats = aggregate(groups[algorithm]);
      } catch (const std::invalid_argument& e) {
        err << path.string() << ": " << e.what() << '\n';
        return kExitInvalidInput;
      }
      std::string label = algorithm;
      if (labels.contains(label)) label += " (" + path.stem().string() + ")";
      labels.insert(label);
      plots.push_back({label, std::move(stats.mean_regret), std::move(stats.ci_half_width)});
    }
  }
  if (plots.empty()) {
    err << "no input files\n";
    return kExitInvalidInput;
  }
  for (const auto& p : plots) {
    if (p.mean.size() != plots.front().mean.size()) {
      err << "mismatched episode axes: " << plots.front().label << " has "
          << plots.front().mean.size() << " episodes, " << p.label << " has " << p.mean.size()
          << '\n';
      return kExitInvalidInput;
    }
  }
  std::ofstream out(out_svg, std::ios::binary);
  if (!out) {
    err << "cannot open " << out_svg << " for writing\n";
    return kExitFailure;
  }
  out << render_regret_svg(plots);
  return out.good() ? kExitOk : kExitFailure;
}

int cmd_solve(const std::filesystem::path& mdp_path, double tol, std::ostream& out,
              std::ostream& err) {
  try {
    const TabularSsp mdp = load_mdp(mdp_path);
    const OptimalSolution sol = solve_optimal(mdp, tol);
    nlohmann::json doc{{"b_star", sol.b_star},
                       {"v_star_init", sol.v_init(mdp)},
                       {"iterations", sol.iterations},
                       {"residual", sol.residual}};
    out << doc.dump() << '\n';
    return kExitOk;
  } catch (const NonConvergence& e) {
    err << "solver: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitInvalidInput;
  }
}

int cmd_env(const EnvSpec& spec, const std::filesystem::path& out_path, std::ostream& err) {
  try {
    save_mdp(build_environment(spec), out_path);
    return kExitOk;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitInvalidInput;
  }
}

int cmd_schedule(const std::string& family, std::uint64_t horizon, std::uint64_t upto,
                 std::ostream& out, std::ostream& err) {
  try {
    StageSchedule schedule(schedule_family_from_string(family), horizon);
    out << "j,e_j,E_j\n";
    for (std::size_t j = 1; schedule.stage_end(j) <= upto; ++j) {
      out << j << ',' << schedule.stage_length(j) << ',' << schedule.stage_end(j) << '\n';
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitInvalidInput;
  }
}

}  // namespace ssp
