#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ssp/io.hpp"

namespace ssp {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 60.0;
constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c",
                                              "#ff7f0e", "#9467bd", "#8c564b"};

std::string fixed(double x, int digits = 2) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_regret_svg(const std::vector<PlotSeries>& series) {
  if (series.empty()) throw std::invalid_argument("nothing to plot");
  const std::size_t K = series.front().mean.size();
  if (K == 0) throw std::invalid_argument("series have no episodes");

  double lo = 0.0;
  double hi = 0.0;
  for (const auto& s : series) {
    if (s.mean.size() != K || s.ci_half_width.size() != K) {
      throw std::invalid_argument("series disagree on the episode axis");
    }
    for (std::size_t k = 0; k < K; ++k) {
      lo = std::min(lo, s.mean[k] - s.ci_half_width[k]);
      hi = std::max(hi, s.mean[k] + s.ci_half_width[k]);
    }
  }
  if (hi - lo <= 0.0) hi = lo + 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](std::size_t k) {
    return kLeft + (K == 1 ? 0.0 : plot_w * static_cast<double>(k) / static_cast<double>(K - 1));
  };
  auto py = [&](double y) { return kTop + plot_h * (hi - y) / (hi - lo); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes and ticks.
  svg << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << kTop + plot_h << "\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + plot_h << "\"/>\n";
  svg << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const std::size_t k = (K - 1) * static_cast<std::size_t>(i) / kTicks;
    svg << "<text x=\"" << fixed(px(k)) << "\" y=\"" << fixed(kTop + plot_h + 18)
        << "\" text-anchor=\"middle\">" << (k + 1) << "</text>\n";
    const double y = lo + (hi - lo) * i / kTicks;
    svg << "<text x=\"" << fixed(kLeft - 6) << "\" y=\"" << fixed(py(y) + 4)
        << "\" text-anchor=\"end\">" << fixed(y, 1) << "</text>\n";
  }
  svg << "<text x=\"" << fixed(kLeft + plot_w / 2) << "\" y=\"" << fixed(kHeight - 15)
      << "\" text-anchor=\"middle\">episode</text>\n";
  svg << "<text x=\"20\" y=\"" << fixed(kTop + plot_h / 2) << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 20 " << fixed(kTop + plot_h / 2) << ")\">cumulative regret</text>\n";
  svg << "</g>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kPalette[i % kPalette.size()];
    svg << "<polygon fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
    for (std::size_t k = 0; k < K; ++k) {
      svg << fixed(px(k)) << ',' << fixed(py(s.mean[k] + s.ci_half_width[k])) << ' ';
    }
    for (std::size_t k = K; k-- > 0;) {
      svg << fixed(px(k)) << ',' << fixed(py(s.mean[k] - s.ci_half_width[k])) << ' ';
    }
    svg << "\"/>\n";
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < K; ++k) svg << fixed(px(k)) << ',' << fixed(py(s.mean[k])) << ' ';
    svg << "\"/>\n";

    const double ly = kTop + 20.0 * static_cast<double>(i + 1);
    svg << "<line x1=\"" << fixed(kLeft + plot_w + 15) << "\" y1=\"" << fixed(ly) << "\" x2=\""
        << fixed(kLeft + plot_w + 40) << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << fixed(kLeft + plot_w + 46) << "\" y=\"" << fixed(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ssp
