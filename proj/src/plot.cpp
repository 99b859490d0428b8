#include "baga/plot.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace baga::plot {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 50.0;

struct Frame {
  double t0 = 0.0, t1 = 1.0;
  double y0 = 0.0, y1 = 1.0;

  double x_px(double t) const { return kLeft + (t - t0) / (t1 - t0) * (kWidth - kLeft - kRight); }
  double y_px(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

Frame make_frame(double t0, double t1, double y0, double y1) {
  if (!(t1 > t0)) t1 = t0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  return {t0, t1, y0, y1};
}

std::string header(const std::string& title) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
      "viewBox=\"0 0 {0:.0f} {1:.0f}\">\n"
      "<rect x=\"0\" y=\"0\" width=\"{0:.0f}\" height=\"{1:.0f}\" fill=\"white\"/>\n"
      "<text x=\"{2:.1f}\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\" "
      "text-anchor=\"middle\">{3}</text>\n",
      kWidth, kHeight, kWidth / 2.0, title);
}

std::string axes(const Frame& f, bool log_scale) {
  const double x_axis_y = kHeight - kBottom;
  std::string out = fmt::format(
      "<line class=\"axis\" x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"black\"/>\n"
      "<line class=\"axis\" x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{3:.1f}\" stroke=\"black\"/>\n",
      kLeft, x_axis_y, kWidth - kRight, kTop);
  for (int i = 0; i <= 4; ++i) {
    const double t = f.t0 + (f.t1 - f.t0) * i / 4.0;
    const double y = f.y0 + (f.y1 - f.y0) * i / 4.0;
    out += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"10\" "
        "text-anchor=\"middle\">{:.4g}</text>\n",
        f.x_px(t), x_axis_y + 15.0, t);
    out += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"10\" "
        "text-anchor=\"end\">{:.4g}</text>\n",
        kLeft - 5.0, f.y_px(y) + 3.0, y);
  }
  out += fmt::format(
      "<text class=\"xlabel\" x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"12\" "
      "text-anchor=\"middle\">time (t)</text>\n",
      (kLeft + kWidth - kRight) / 2.0, kHeight - 12.0);
  out += fmt::format(
      "<text class=\"ylabel\" x=\"15\" y=\"{0:.1f}\" font-family=\"sans-serif\" font-size=\"12\" "
      "text-anchor=\"middle\" transform=\"rotate(-90 15 {0:.1f})\">{1}</text>\n",
      (kTop + kHeight - kBottom) / 2.0,
      log_scale ? "ln(optimal bacteria)" : "optimal bacteria (y)");
  return out;
}

std::string no_data(const std::string& title, const std::string& message) {
  return header(title) +
         fmt::format("<text class=\"empty\" x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" "
                     "font-size=\"14\" text-anchor=\"middle\">{}</text>\n</svg>\n",
                     kWidth / 2.0, kHeight / 2.0, message);
}

}  // namespace

std::string occurrence_growth_svg(std::span<const analysis::Point> series,
                                  const std::optional<analysis::RegressionFit>& fit,
                                  bool log_scale) {
  const std::string title = "Optimal bacteria over time";
  if (series.empty()) return no_data(title, "no occurrences");

  auto yv = [&](double y) { return log_scale ? std::log(y) : y; };
  const double t0 = 0.0;
  const double t1 = series.back().t;
  const double ymax = yv(series.back().y);
  const Frame f = make_frame(t0, t1, 0.0, ymax * 1.05);

  std::string out = header(title) + axes(f, log_scale);
  out += "<g class=\"points\" fill=\"#2a7f2a\">\n";
  for (const auto& p : series)
    out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2\"/>\n", f.x_px(p.t), f.y_px(yv(p.y)));
  out += "</g>\n";

  if (fit) {
    constexpr int kSteps = 100;
    std::string pts;
    for (int i = 0; i <= kSteps; ++i) {
      const double t = series.front().t + (t1 - series.front().t) * i / kSteps;
      const double ln_y = -fit->a + fit->b * t;
      const double y = log_scale ? ln_y : std::exp(ln_y);
      const double clamped = std::clamp(y, f.y0, f.y1);
      if (!pts.empty()) pts += ' ';
      pts += fmt::format("{:.2f},{:.2f}", f.x_px(t), f.y_px(clamped));
    }
    out += fmt::format("<polyline class=\"fit\" fill=\"none\" stroke=\"#c03030\" stroke-width=\"1.5\" points=\"{}\"/>\n", pts);
    out += fmt::format(
        "<text class=\"model\" x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\">"
        "y = exp(-{:.4g} + {:.4g} t)</text>\n",
        kLeft + 10.0, kTop + 15.0, fit->a, fit->b);
  }
  out += "</svg>\n";
  return out;
}

std::string census_growth_svg(std::span<const CensusSample> census, bool log_scale) {
  const std::string title = "Optimal bacteria over time (census)";
  if (census.empty()) return no_data(title, "no census samples");

  auto yv = [&](double y) { return log_scale ? std::log1p(y) : y; };
  double ymax = 0.0;
  for (const auto& s : census) ymax = std::max(ymax, yv(static_cast<double>(s.optimal_count)));
  const Frame f = make_frame(census.front().time, census.back().time, 0.0, ymax * 1.05);

  std::string pts;
  for (const auto& s : census) {
    if (!pts.empty()) pts += ' ';
    pts += fmt::format("{:.2f},{:.2f}", f.x_px(s.time), f.y_px(yv(static_cast<double>(s.optimal_count))));
  }
  return header(title) + axes(f, log_scale) +
         fmt::format("<polyline class=\"census\" fill=\"none\" stroke=\"#2a7f2a\" stroke-width=\"1.5\" points=\"{}\"/>\n", pts) +
         "</svg>\n";
}

std::string cell_fill(const Bacterium& b, const ProblemSpec& spec) {
  if (spec.kind == ProblemKind::Hamiltonian3) {
    switch (b.fluorescence) {
      case Fluorescence::Yellow: return "#ffff00";
      case Fluorescence::Red: return "#ff0000";
      case Fluorescence::Green: return "#00ff00";
      case Fluorescence::None: return "#808080";
    }
  }
  const double level = std::clamp(b.gfp / spec.circuit.reporter.m, 0.0, 1.0);
  return fmt::format("#00{:02x}00", static_cast<int>(std::lround(level * 255.0)));
}

std::string colony_snapshot_svg(std::span<const Bacterium> population, const ProblemSpec& spec) {
  const std::string title = "Colony snapshot";
  if (population.empty()) return no_data(title, "empty colony");

  std::vector<const Bacterium*> cells;
  cells.reserve(population.size());
  for (const auto& b : population) cells.push_back(&b);
  std::sort(cells.begin(), cells.end(), [](const auto* x, const auto* y) { return x->id < y->id; });

  constexpr double kSpacing = 4.0;
  constexpr double kCellRadius = 2.0;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double radius = kSpacing * std::sqrt(static_cast<double>(cells.size())) + 10.0;
  const double size = 2.0 * radius;

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{0:.0f}\" "
      "viewBox=\"0 0 {0:.0f} {0:.0f}\">\n"
      "<rect x=\"0\" y=\"0\" width=\"{0:.0f}\" height=\"{0:.0f}\" fill=\"black\"/>\n",
      size);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double r = kSpacing * std::sqrt(static_cast<double>(i) + 0.5);
    const double theta = golden * static_cast<double>(i);
    out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.1f}\" fill=\"{}\"/>\n",
                       radius + r * std::cos(theta), radius + r * std::sin(theta), kCellRadius,
                       cell_fill(*cells[i], spec));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace baga::plot
