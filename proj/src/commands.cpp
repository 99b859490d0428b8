#include "baga/commands.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "baga/analysis.hpp"
#include "baga/colony.hpp"
#include "baga/config.hpp"
#include "baga/errors.hpp"
#include "baga/output.hpp"
#include "baga/parallel.hpp"
#include "baga/plot.hpp"

namespace baga::cli {

namespace {

// Maps exceptions onto exit codes.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const FitError& e) {
    err << "fit error: " << e.what() << '\n';
    return kFitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

config::RunConfig load_effective(const std::filesystem::path& path, std::optional<std::uint64_t> seed,
                                 const std::optional<std::string>& variant) {
  auto cfg = config::load(path);
  if (seed) cfg.sim.seed = *seed;
  if (variant) {
    if (!parse_protocol(*variant)) throw ConfigError("--variant", "expected SP, SPE, P or PE");
    cfg.protocol.variant = *variant;
  }
  return cfg;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

std::string fmt_objective(double y) { return fmt::format("{:.6g}", y); }

std::string order_name(const SegmentOrder& order) {
  return fmt::format("{},{},{}", edge_name(order[0]), edge_name(order[1]), edge_name(order[2]));
}

}  // namespace

std::optional<std::pair<std::uint64_t, std::uint64_t>> parse_seed_range(const std::string& text) {
  try {
    const auto dots = text.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const auto v = std::stoull(text, &used);
      if (used != text.size()) return std::nullopt;
      return std::pair{v, v};
    }
    const std::string lo = text.substr(0, dots), hi = text.substr(dots + 2);
    const auto a = std::stoull(lo, &used);
    if (used != lo.size()) return std::nullopt;
    const auto b = std::stoull(hi, &used);
    if (used != hi.size() || b < a) return std::nullopt;
    return std::pair{a, b};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto effective = load_effective(opts.config, opts.seed, opts.variant);
    const auto colony = config::to_colony_config(effective);
    const auto start = std::chrono::steady_clock::now();
    const auto record = run(colony);
    const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;
    const auto files = output::write_bundle(opts.out, effective, colony, record,
                                            opts.record_wall_time ? std::optional(wall.count()) : std::nullopt);
    out << fmt::format("{} {} seed {}: {} occurrences, colony {} at t={} ({})\n",
                       colony.problem.name(), to_string(colony.protocol), colony.seed,
                       record.occurrences.size(), record.final_population.size(),
                       output::format_number(record.end_time), to_string(record.halt));
    for (const auto& f : files) out << "  wrote " << f.string() << '\n';
    return kOk;
  });
}

int cmd_fit(const FitOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::string text = output::read_file(opts.input);
    std::vector<analysis::Point> series;
    if (opts.binned) {
      const auto census = output::parse_census_csv(text);
      series = analysis::census_to_series(census);
    } else {
      const auto occ = output::parse_occurrences_csv(text);
      std::vector<double> times;
      for (const auto& o : occ) times.push_back(o.time);
      series = analysis::occurrences_to_series(times);
    }
    const auto fit = analysis::fit_exponential(series);
    output::write_file(opts.out, output::fit_json({fit, {}}));
    out << fmt::format("y = exp(-{} + {} t)  r2={} p={} n={}\n", output::format_number(fit.a),
                       output::format_number(fit.b), output::format_number(fit.r2),
                       output::format_number(fit.p_value), fit.n);
    return kOk;
  });
}

int cmd_oracle(const OracleOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto kind = parse_problem_name(opts.problem);
    if (!kind) throw ConfigError("--problem", "unknown problem '" + opts.problem + "'");
    const auto spec = make_problem(*kind);
    const auto result = parallel::oracle_omp(spec, parallel::threads_from_env());

    out << fmt::format("problem: {} ({})\n", spec.name(),
                       spec.direction == Direction::Maximize ? "maximize" : "minimize");
    if (*kind == ProblemKind::Hamiltonian3) {
      const auto orders = all_segment_orders();
      std::size_t yellow = 0;
      for (const auto& row : result.table) yellow += row.phenotype.fluorescence == Fluorescence::Yellow;
      for (std::size_t i = 0; i < orders.size(); ++i)
        if (result.table[i].phenotype.fluorescence == Fluorescence::Yellow)
          out << fmt::format("optimal: {} → Yellow ({} of {} orders)\n", order_name(orders[i]), yellow,
                             orders.size());
      out << "order  plasmid           fluorescence\n";
      for (std::size_t i = 0; i < orders.size(); ++i)
        out << fmt::format("{:<6} {:<17} {}\n", order_name(orders[i]), result.table[i].plasmid.to_string(),
                           to_string(result.table[i].phenotype.fluorescence));
      return kOk;
    }

    const bool knapsack = spec.knapsack.has_value();
    for (const auto& p : result.optimal) {
      if (knapsack) {
        const auto ev = eval_knapsack(p, *spec.knapsack);
        out << fmt::format("optimal: {} → profit {}, weight {}\n", p.to_string(), fmt_objective(ev.profit),
                           fmt_objective(ev.weight));
      } else {
        out << fmt::format("optimal: {} → {}\n", p.to_string(), fmt_objective(result.optimal_objective));
      }
    }
    out << fmt::format("{:<8} {:>12} {:>12} {:>12} {:>12} {:>9} {:>8}\n", "genome",
                       knapsack ? "profit" : "objective", "iptg", "z", "gfp", "feasible", "optimal");
    for (const auto& row : result.table) {
      const auto& ph = row.phenotype;
      out << fmt::format("{:<8} {:>12} {:>12} {:>12} {:>12} {:>9} {:>8}\n", row.plasmid.to_string(),
                         fmt_objective(ph.objective), fmt_objective(ph.iptg), fmt_objective(ph.z),
                         fmt_objective(ph.gfp), ph.feasible ? "yes" : "no", ph.optimal ? "yes" : "no");
    }
    return kOk;
  });
}

int cmd_plot(const PlotOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.census.has_value() == opts.occurrences.has_value())
      throw ConfigError("--census/--occurrences", "give exactly one input");
    std::string svg;
    if (opts.census) {
      const auto census = output::parse_census_csv(output::read_file(*opts.census));
      svg = plot::census_growth_svg(census, opts.log_scale);
    } else {
      const auto occ = output::parse_occurrences_csv(output::read_file(*opts.occurrences));
      const auto fit = output::fit_occurrences(occ);
      std::vector<double> times;
      for (const auto& o : occ) times.push_back(o.time);
      const auto series = analysis::occurrences_to_series(times);
      svg = plot::occurrence_growth_svg(series, fit.fit, opts.log_scale);
    }
    output::write_file(opts.out, svg);
    out << "wrote " << opts.out.string() << '\n';
    return kOk;
  });
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.last_seed < opts.first_seed) throw ConfigError("--seeds", "empty seed range");
    const auto base_cfg = load_effective(opts.config, std::nullopt, opts.variant);
    const auto base = config::to_colony_config(base_cfg);
    std::vector<std::uint64_t> seeds;
    for (auto s = opts.first_seed; s <= opts.last_seed; ++s) seeds.push_back(s);

    const auto records = opts.serial ? parallel::sweep_serial(base, seeds)
                                     : parallel::sweep_omp(base, seeds, parallel::threads_from_env());

    nlohmann::ordered_json summary;
    summary["problem"] = base.problem.name();
    summary["protocol"] = to_string(base.protocol);
    std::vector<double> slopes, intercepts;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      auto cfg = base_cfg;
      cfg.sim.seed = seeds[i];
      auto colony = base;
      colony.seed = seeds[i];
      output::write_bundle(opts.out / fmt::format("seed_{}", seeds[i]), cfg, colony, records[i]);
      const auto fit = output::fit_occurrences(records[i].occurrences);
      nlohmann::ordered_json row;
      row["seed"] = seeds[i];
      row["occurrences"] = records[i].occurrences.size();
      if (fit.fit) {
        row["a"] = output::round9(fit.fit->a);
        row["b"] = output::round9(fit.fit->b);
        row["p_value"] = output::round9(fit.fit->p_value);
        slopes.push_back(fit.fit->b);
        intercepts.push_back(fit.fit->a);
      } else {
        row["error"] = fit.error;
      }
      summary["runs"].push_back(row);
    }
    summary["fitted_runs"] = slopes.size();
    summary["median_a"] = slopes.empty() ? nlohmann::ordered_json(nullptr)
                                         : nlohmann::ordered_json(output::round9(median(intercepts)));
    summary["median_b"] = slopes.empty() ? nlohmann::ordered_json(nullptr)
                                         : nlohmann::ordered_json(output::round9(median(slopes)));
    std::filesystem::create_directories(opts.out);
    output::write_file(opts.out / "sweep.json", summary.dump(2) + "\n");
    out << fmt::format("{} runs, {} fitted, median b = {}\n", seeds.size(), slopes.size(),
                       slopes.empty() ? std::string("n/a") : output::format_number(median(slopes)));
    return kOk;
  });
}

}  // namespace baga::cli
