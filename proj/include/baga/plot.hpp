#pragma once

// Deterministic SVG renderers for growth curves and colony snapshots.

#include <optional>
#include <span>
#include <string>

#include "baga/analysis.hpp"
#include "baga/colony.hpp"

namespace baga::plot {

// Occurrence counts as points with the fitted exponential overlaid as a
// polyline. An empty series renders a "no occurrences" annotation.
std::string occurrence_growth_svg(std::span<const analysis::Point> series,
                                  const std::optional<analysis::RegressionFit>& fit,
                                  bool log_scale);

// Optimal count over time as a single polyline.
std::string census_growth_svg(std::span<const CensusSample> census, bool log_scale);

// Cells laid out on a golden-angle spiral in birth order. Fill is the
// reporter color: green channel ~ gfp/m, or the Hamiltonian fluorescence.
std::string colony_snapshot_svg(std::span<const Bacterium> population, const ProblemSpec& spec);

// Fill color used for one cell in the snapshot.
std::string cell_fill(const Bacterium& b, const ProblemSpec& spec);

}  // namespace baga::plot
