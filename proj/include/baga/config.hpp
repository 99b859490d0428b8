#pragma once

// TOML run configuration: file representation, parsing with key-path
// diagnostics, serialization, and conversion to a ColonyConfig.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "baga/colony.hpp"

namespace baga::config {

struct ProblemSection {
  std::string name;
  std::optional<std::vector<double>> values;
  std::optional<std::vector<double>> weights;
  std::optional<double> capacity;
  std::optional<double> y_ceiling;
  bool operator==(const ProblemSection&) const = default;
};

struct ProtocolSection {
  std::string variant = "SP";
  std::optional<double> p_m;
  std::optional<double> p_hix;
  std::optional<double> p_accept;
  std::optional<std::string> hix_mode;          // "segment" | "element"
  std::optional<bool> segment_inversion;
  std::string mutation_target = "daughter";     // "daughter" | "both"
  std::string initial_plasmid = "random";       // "random" | "zeros"
  std::optional<std::string> initial_order;     // e.g. "A,B,C"
  std::optional<double> theta_e;
  bool operator==(const ProtocolSection&) const = default;
};

struct TransportSection {
  double vmax = 1.0;
  std::optional<double> michaelis;  // defaults to sum(values)/l
  double k2 = 0.02;
  bool operator==(const TransportSection&) const = default;
};

struct CircuitSection {
  std::string response;  // "linear" | "hill"
  std::optional<double> gain;
  std::optional<double> scale;
  std::optional<double> vmax;
  std::optional<double> half_saturation;  // defaults to sum(values)/l for improved knapsack
  std::optional<double> hill_n;
  std::optional<TransportSection> transport;
  double m = 150.0;
  double theta_gfp = 149.0;
  double k0 = 0.03;
  double alpha = 0.8;
  double beta = 10.0;
  std::string normalize = "none";  // "none" | "oracle_max"
  bool operator==(const CircuitSection&) const = default;
};

struct SimSection {
  std::uint64_t seed = 1;
  std::uint64_t capacity = 5000;
  double t_max = 1000.0;
  double sample_dt = 5.0;
  bool operator==(const SimSection&) const = default;
};

struct DetectionSection {
  std::string rule;  // "gfp_threshold" | "plasmid_match" | "fluorescence"
  std::optional<double> theta;
  std::optional<std::vector<std::string>> genomes;
  std::optional<std::string> color;
  bool operator==(const DetectionSection&) const = default;
};

struct RunConfig {
  ProblemSection problem;
  ProtocolSection protocol;
  CircuitSection circuit;
  SimSection sim;
  DetectionSection detection;
  bool operator==(const RunConfig&) const = default;
};

RunConfig parse(std::string_view toml_text);
RunConfig load(const std::filesystem::path& path);
std::string serialize(const RunConfig& config);

// Builds the simulation configuration. Throws ConfigError with a key path.
ColonyConfig to_colony_config(const RunConfig& config);

// Names of the bundled experiment files under configs/.
const std::vector<std::string>& bundled_config_names();

}  // namespace baga::config
