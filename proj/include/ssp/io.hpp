#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ssp/harness.hpp"

namespace ssp {

/// Invalid experiment file. `field` is the dotted path of the offending key,
/// e.g. "agents[1].H".
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& problem)
      : std::invalid_argument(field + ": " + problem), field(std::move(field)) {}
  std::string field;
};

ExperimentConfig parse_experiment_config(const nlohmann::json& doc);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

inline constexpr const char* kCsvHeader =
    "run_id,seed,algorithm,env,episode,episode_steps,episode_cost,cum_cost,cum_regret,truncated,"
    "update_time_ns";

/// Real formatting used by every text output: 17 significant digits.
std::string format_real(double x);

/// One row per (run, episode), grouped by agent in config order and sorted by
/// (run_id, episode) within each agent.
void write_regret_csv(std::ostream& out, const ExperimentResult& result);
void write_regret_csv(std::ostream& out, const std::vector<RegretSeries>& runs);

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a file produced by write_regret_csv back into series, in file
/// order. v_star_init is recovered from the first row of each run.
std::vector<RegretSeries> read_regret_csv(std::istream& in);

struct PlotSeries {
  std::string label;
  std::vector<double> mean;
  std::vector<double> ci_half_width;
};

/// Line chart of mean cumulative regret per series with a shaded 95% band.
std::string render_regret_svg(const std::vector<PlotSeries>& series);

/// Exit codes of the command surface.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitNonConvergence = 3;

struct RunOptions {
  bool record_timing = false;
  std::size_t threads = 0;
};

int cmd_run(const std::filesystem::path& config_path, const std::filesystem::path& out_path,
            const RunOptions& options, std::ostream& err);
int cmd_plot(const std::vector<std::filesystem::path>& csv_paths,
             const std::filesystem::path& out_svg, std::ostream& err);
int cmd_solve(const std::filesystem::path& mdp_path, double tol, std::ostream& out,
              std::ostream& err);
int cmd_env(const EnvSpec& spec, const std::filesystem::path& out_path, std::ostream& err);
int cmd_schedule(const std::string& family, std::uint64_t horizon, std::uint64_t upto,
                 std::ostream& out, std::ostream& err);

}  // namespace ssp
