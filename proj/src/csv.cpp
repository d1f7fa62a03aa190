#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "ssp/io.hpp"

namespace ssp {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_regret_csv(std::ostream& out, const std::vector<RegretSeries>& runs) {
  for (const auto& run : runs) {
    for (std::size_t k = 0; k < run.episodes.size(); ++k) {
      const auto& e = run.episodes[k];
      out << run.run_id << ',' << run.seed << ',' << run.algorithm << ',' << run.env << ','
          << (k + 1) << ',' << e.steps << ',' << format_real(e.cost) << ','
          << format_real(e.cum_cost) << ',' << format_real(e.cum_regret) << ','
          << (e.truncated ? 1 : 0) << ',' << e.update_time_ns << '\n';
    }
  }
}

void write_regret_csv(std::ostream& out, const ExperimentResult& result) {
  out << kCsvHeader << '\n';
  for (const auto& agent : result.agents) write_regret_csv(out, agent.runs);
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

template <typename T>
T parse_number(const std::string& text, std::size_t line_no) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw CsvError("line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
  return value;
}

}  // namespace

std::vector<RegretSeries> read_regret_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError("empty file");
  if (line != kCsvHeader) throw CsvError("unexpected header");

  std::vector<RegretSeries> runs;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 11) throw CsvError("line " + std::to_string(line_no) + ": expected 11 fields");
    const auto run_id = parse_number<std::size_t>(f[0], line_no);
    const auto episode = parse_number<std::uint64_t>(f[4], line_no);
    if (runs.empty() || runs.back().run_id != run_id || runs.back().algorithm != f[2] ||
        episode == 1) {
      RegretSeries series;
      series.run_id = run_id;
      series.seed = parse_number<std::uint64_t>(f[1], line_no);
      series.algorithm = f[2];
      series.env = f[3];
      runs.push_back(std::move(series));
    }
    RegretSeries& series = runs.back();
    if (episode != series.episodes.size() + 1) {
      throw CsvError("line " + std::to_string(line_no) + ": episodes out of order");
    }
    EpisodeRecord e;
    e.steps = parse_number<std::uint64_t>(f[5], line_no);
    e.cost = parse_number<double>(f[6], line_no);
    e.cum_cost = parse_number<double>(f[7], line_no);
    e.cum_regret = parse_number<double>(f[8], line_no);
    e.truncated = parse_number<int>(f[9], line_no) != 0;
    e.update_time_ns = parse_number<std::uint64_t>(f[10], line_no);
    if (episode == 1) series.v_star_init = e.cum_cost - e.cum_regret;
    series.episodes.push_back(e);
  }
  return runs;
}

}  // namespace ssp
