#include "baga/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "baga/errors.hpp"

namespace baga::analysis {

std::vector<Point> occurrences_to_series(std::span<const double> times) {
  std::vector<Point> out;
  out.reserve(times.size());
  double prev_raw = -std::numeric_limits<double>::infinity();
  double prev = prev_raw;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double raw = times[i];
    if (raw < prev_raw) throw FitError("occurrence times must be sorted ascending");
    const double t = raw > prev ? raw : std::nextafter(prev, std::numeric_limits<double>::infinity());
    out.push_back({t, static_cast<double>(i + 1)});
    prev_raw = raw;
    prev = t;
  }
  return out;
}

std::vector<double> occurrence_times(const RunRecord& record) {
  std::vector<double> out;
  out.reserve(record.occurrences.size());
  for (const auto& o : record.occurrences) out.push_back(o.time);
  return out;
}

std::vector<Point> census_to_series(std::span<const CensusSample> census) {
  std::vector<Point> out;
  for (const auto& s : census)
    if (s.optimal_count > 0) out.push_back({s.time, static_cast<double>(s.optimal_count)});
  return out;
}

RegressionFit fit_exponential(std::span<const Point> points) {
  const std::size_t n = points.size();
  if (n < 3) throw FitError(fmt::format("exponential fit needs at least 3 points, got {}", n));
  for (const auto& p : points)
    if (!(p.y > 0.0)) throw FitError("exponential fit needs positive counts");

  double t_mean = 0.0, ly_mean = 0.0;
  for (const auto& p : points) {
    t_mean += p.t;
    ly_mean += std::log(p.y);
  }
  t_mean /= static_cast<double>(n);
  ly_mean /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& p : points) {
    const double dt = p.t - t_mean;
    const double dy = std::log(p.y) - ly_mean;
    sxx += dt * dt;
    sxy += dt * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw FitError("exponential fit needs at least two distinct times");

  RegressionFit fit;
  fit.n = n;
  const double flat_tol = 1e-12 * std::max(1.0, std::abs(ly_mean));
  if (syy <= flat_tol * flat_tol * static_cast<double>(n)) {
    fit.b = 0.0;
    fit.a = -ly_mean;
    fit.r2 = 0.0;
    fit.p_value = 1.0;
    return fit;
  }

  fit.b = sxy / sxx;
  fit.a = -(ly_mean - fit.b * t_mean);
  const double ss_res = std::max(0.0, syy - fit.b * sxy);
  fit.r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  const double dof = static_cast<double>(n - 2);
  if (ss_res == 0.0) {
    fit.p_value = fit.b == 0.0 ? 1.0 : 0.0;
    return fit;
  }
  const double se_b = std::sqrt(ss_res / dof / sxx);
  fit.p_value = student_t_two_sided_p(fit.b / se_b, dof);
  return fit;
}

std::optional<double> waiting_time(const RegressionFit& fit, double count) {
  if (!(fit.b > 0.0) || !(count > 0.0)) return std::nullopt;
  return (std::log(count) + fit.a) / fit.b;
}

double student_t_two_sided_p(double t, double dof) {
  if (!(dof > 0.0)) throw FitError("t distribution needs positive degrees of freedom");
  if (std::isinf(t)) return 0.0;
  return incomplete_beta(dof / 2.0, 0.5, dof / (dof + t * t));
}

namespace {

// Continued fraction for I_x(a, b) (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 10000;
  constexpr double kTol = 1e-12;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kTol) return h;
  }
  throw FitError("incomplete beta continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw FitError("incomplete beta needs a, b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

}  // namespace baga::analysis
