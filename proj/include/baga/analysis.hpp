#pragma once

// Exponential growth model y(t) = exp(-a + b t) fitted to optimal-bacterium
// occurrence counts by least squares on ln y.

#include <optional>
#include <span>
#include <vector>

#include "baga/colony.hpp"

namespace baga::analysis {

struct Point {
  double t = 0.0;
  double y = 0.0;
};

struct RegressionFit {
  double a = 0.0;
  double b = 0.0;
  double r2 = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

// i-th occurrence time -> (t_i, i), i from 1. Equal times are separated by
// successive nextafter steps so every t is strictly increasing.
std::vector<Point> occurrences_to_series(std::span<const double> times);

std::vector<double> occurrence_times(const RunRecord& record);

// Census samples with a positive optimal count -> (time, optimal_count).
std::vector<Point> census_to_series(std::span<const CensusSample> census);

RegressionFit fit_exponential(std::span<const Point> points);

// Model time at which y(t) = count; nullopt when b <= 0.
std::optional<double> waiting_time(const RegressionFit& fit, double count);

// Two-sided p-value of a t statistic with `dof` degrees of freedom.
double student_t_two_sided_p(double t, double dof);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

}  // namespace baga::analysis
