#pragma once

// Implementation of the `baga` subcommands. Each returns a process exit
// code: 0 success, 2 config error, 3 runtime error, 4 fit error.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace baga::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kRuntimeError = 3, kFitError = 4 };

struct RunOptions {
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out;
  std::optional<std::string> variant;
  // Adds wall-clock time to the manifest (breaks byte-identical replays).
  bool record_wall_time = false;
};

struct FitOptions {
  std::filesystem::path input;
  std::filesystem::path out;
  // Fit census optimal counts instead of occurrence indices.
  bool binned = false;
};

struct OracleOptions {
  std::string problem;
};

struct PlotOptions {
  std::optional<std::filesystem::path> census;
  std::optional<std::filesystem::path> occurrences;
  std::filesystem::path out;
  bool log_scale = false;
};

struct SweepOptions {
  std::filesystem::path config;
  std::uint64_t first_seed = 1;
  std::uint64_t last_seed = 10;
  std::filesystem::path out;
  std::optional<std::string> variant;
  bool serial = false;
};

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);
int cmd_fit(const FitOptions& opts, std::ostream& out, std::ostream& err);
int cmd_oracle(const OracleOptions& opts, std::ostream& out, std::ostream& err);
int cmd_plot(const PlotOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);

// Parses "a..b" (inclusive) or a single seed.
std::optional<std::pair<std::uint64_t, std::uint64_t>> parse_seed_range(const std::string& text);

}  // namespace baga::cli
