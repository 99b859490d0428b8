#pragma once

// Run bundle serialization: occurrences.csv, census.csv, fit.json,
// manifest.json and the two SVG plots.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "baga/analysis.hpp"
#include "baga/colony.hpp"
#include "baga/config.hpp"

namespace baga::output {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kOccurrencesHeader = "index,time,bacterium_id,genome";
inline constexpr const char* kCensusHeader = "time,colony_size,optimal_count,mean_fitness";

// 9 significant digits.
std::string format_number(double x);

// x rounded to the value format_number prints.
double round9(double x);

std::string occurrences_csv(const RunRecord& record);
std::string census_csv(const RunRecord& record);

std::vector<Occurrence> parse_occurrences_csv(const std::string& text);
std::vector<CensusSample> parse_census_csv(const std::string& text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

struct FitOutcome {
  std::optional<analysis::RegressionFit> fit;
  std::string error;
};

FitOutcome fit_occurrences(const std::vector<Occurrence>& occurrences);
std::string fit_json(const FitOutcome& outcome);

std::string manifest_json(const config::RunConfig& effective, const ColonyConfig& colony,
                          const RunRecord& record, std::optional<double> wall_seconds);

// Writes the full bundle into `dir` (created if needed). Returns the paths
// written, in a fixed order.
std::vector<std::filesystem::path> write_bundle(const std::filesystem::path& dir,
                                                const config::RunConfig& effective,
                                                const ColonyConfig& colony, const RunRecord& record,
                                                std::optional<double> wall_seconds = std::nullopt);

}  // namespace baga::output
