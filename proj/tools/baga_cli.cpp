#include <iostream>

#include <CLI11.hpp>

#include "baga/commands.hpp"

int main(int argc, char** argv) {
  using namespace baga::cli;

  CLI::App app{"baga: bacterial agent genetic algorithm simulator"};
  app.require_subcommand(1);

  RunOptions run;
  std::uint64_t run_seed = 0;
  auto* run_cmd = app.add_subcommand("run", "run one colony and write an output bundle");
  run_cmd->add_option("--config", run.config, "experiment TOML file")->required();
  auto* seed_opt = run_cmd->add_option("--seed", run_seed, "RNG seed (overrides [sim] seed)");
  run_cmd->add_option("--out", run.out, "output directory")->required();
  run_cmd->add_option("--variant", run.variant, "protocol override")
      ->check(CLI::IsMember({"SP", "SPE", "P", "PE"}));
  run_cmd->add_flag("--timing", run.record_wall_time, "record wall time in manifest.json");

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "fit y = exp(-a + b t) to occurrences");
  fit_cmd->add_option("--input", fit.input, "occurrences.csv (or census.csv with --binned)")->required();
  fit_cmd->add_option("--out", fit.out, "fit.json path")->required();
  fit_cmd->add_flag("--binned", fit.binned, "fit census optimal_count instead");

  OracleOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force the search space of a problem");
  oracle_cmd->add_option("--problem", oracle.problem, "problem name")->required();

  PlotOptions plot;
  std::filesystem::path census_in, occ_in;
  auto* plot_cmd = app.add_subcommand("plot", "render a growth curve SVG");
  auto* census_opt = plot_cmd->add_option("--census", census_in, "census.csv");
  auto* occ_opt = plot_cmd->add_option("--occurrences", occ_in, "occurrences.csv");
  census_opt->excludes(occ_opt);
  plot_cmd->add_option("--out", plot.out, "output SVG")->required();
  plot_cmd->add_flag("--log", plot.log_scale, "logarithmic y axis");

  SweepOptions sweep;
  std::string seeds = "1..10";
  auto* sweep_cmd = app.add_subcommand("sweep", "run a seed range and fit each run");
  sweep_cmd->add_option("--config", sweep.config, "experiment TOML file")->required();
  sweep_cmd->add_option("--seeds", seeds, "inclusive seed range a..b")->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out, "output directory")->required();
  sweep_cmd->add_option("--variant", sweep.variant, "protocol override")
      ->check(CLI::IsMember({"SP", "SPE", "P", "PE"}));
  sweep_cmd->add_flag("--serial", sweep.serial, "use the serial reference loop");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  if (*run_cmd) {
    if (*seed_opt) run.seed = run_seed;
    return cmd_run(run, std::cout, std::cerr);
  }
  if (*fit_cmd) return cmd_fit(fit, std::cout, std::cerr);
  if (*oracle_cmd) return cmd_oracle(oracle, std::cout, std::cerr);
  if (*plot_cmd) {
    if (*census_opt) plot.census = census_in;
    if (*occ_opt) plot.occurrences = occ_in;
    return cmd_plot(plot, std::cout, std::cerr);
  }
  const auto range = parse_seed_range(seeds);
  if (!range) {
    std::cerr << "config error: --seeds: expected a..b\n";
    return kConfigError;
  }
  sweep.first_seed = range->first;
  sweep.last_seed = range->second;
  return cmd_sweep(sweep, std::cout, std::cerr);
}
