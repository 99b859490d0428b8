#include "baga/output.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "baga/errors.hpp"
#include "baga/plot.hpp"

namespace baga::output {

namespace {

using ojson = nlohmann::ordered_json;

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::vector<std::string> data_lines(const std::string& text, const char* header, std::size_t columns) {
  std::istringstream in(text);
  std::string line;
  // A zero-byte file reads as a header-only one.
  if (!std::getline(in, line)) return {};
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw FitError(fmt::format("unexpected CSV header '{}', want '{}'", line, header));
  std::vector<std::string> out;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (split(line, ',').size() != columns) throw FitError("malformed CSV row: " + line);
    out.push_back(line);
  }
  return out;
}

double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw FitError("bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw FitError("bad number '" + s + "'");
  }
}

std::uint64_t to_u64(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != s.size()) throw FitError("bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw FitError("bad integer '" + s + "'");
  }
}

ojson detection_json(const DetectionRule& rule) {
  return std::visit(
      [](const auto& r) -> ojson {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, GfpThreshold>) {
          return {{"rule", "gfp_threshold"}, {"theta", round9(r.theta)}};
        } else if constexpr (std::is_same_v<R, PlasmidMatch>) {
          return {{"rule", "plasmid_match"}, {"genomes", r.genomes}};
        } else {
          return {{"rule", "fluorescence"}, {"color", to_string(r.color)}};
        }
      },
      rule);
}

ojson response_json(const circuit::ResponseFn& fn) {
  if (const auto* lin = std::get_if<circuit::LinearResponse>(&fn))
    return {{"kind", "linear"}, {"gain", round9(lin->gain)}, {"scale", round9(lin->scale)}};
  const auto& h = std::get<circuit::HillResponse>(fn);
  return {{"kind", "hill"},
          {"vmax", round9(h.vmax)},
          {"half_saturation", round9(h.half_saturation)},
          {"hill_n", round9(h.exponent)}};
}

}  // namespace

std::string format_number(double x) { return fmt::format("{:.9g}", x); }

double round9(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

std::string occurrences_csv(const RunRecord& record) {
  std::string out = std::string(kOccurrencesHeader) + "\n";
  std::size_t index = 1;
  for (const auto& o : record.occurrences)
    out += fmt::format("{},{},{},{}\n", index++, format_number(o.time), o.bacterium_id, o.genome);
  return out;
}

std::string census_csv(const RunRecord& record) {
  std::string out = std::string(kCensusHeader) + "\n";
  for (const auto& s : record.census)
    out += fmt::format("{},{},{},{}\n", format_number(s.time), s.colony_size, s.optimal_count,
                       format_number(s.mean_fitness));
  return out;
}

std::vector<Occurrence> parse_occurrences_csv(const std::string& text) {
  std::vector<Occurrence> out;
  for (const auto& line : data_lines(text, kOccurrencesHeader, 4)) {
    const auto cols = split(line, ',');
    out.push_back({to_double(cols[1]), to_u64(cols[2]), cols[3]});
  }
  return out;
}

std::vector<CensusSample> parse_census_csv(const std::string& text) {
  std::vector<CensusSample> out;
  for (const auto& line : data_lines(text, kCensusHeader, 4)) {
    const auto cols = split(line, ',');
    out.push_back({to_double(cols[0]), static_cast<std::size_t>(to_u64(cols[1])),
                   static_cast<std::size_t>(to_u64(cols[2])), to_double(cols[3])});
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

FitOutcome fit_occurrences(const std::vector<Occurrence>& occurrences) {
  std::vector<double> times;
  times.reserve(occurrences.size());
  for (const auto& o : occurrences) times.push_back(o.time);
  try {
    const auto series = analysis::occurrences_to_series(times);
    return {analysis::fit_exponential(series), {}};
  } catch (const FitError& e) {
    return {std::nullopt, e.what()};
  }
}

std::string fit_json(const FitOutcome& outcome) {
  ojson j;
  if (outcome.fit) {
    const auto& f = *outcome.fit;
    j["a"] = round9(f.a);
    j["b"] = round9(f.b);
    j["r2"] = round9(f.r2);
    j["p_value"] = round9(f.p_value);
    j["n"] = f.n;
  } else {
    j["a"] = nullptr;
    j["b"] = nullptr;
    j["r2"] = nullptr;
    j["p_value"] = nullptr;
    j["n"] = 0;
    j["error"] = outcome.error;
  }
  return j.dump(2) + "\n";
}

std::string manifest_json(const config::RunConfig& effective, const ColonyConfig& colony,
                          const RunRecord& record, std::optional<double> wall_seconds) {
  const auto sel = effective_selection(colony);
  const auto& spec = colony.problem;
  ojson eff;
  eff["problem"] = spec.name();
  eff["protocol"] = to_string(colony.protocol);
  eff["k0"] = round9(sel.k0);
  eff["alpha"] = round9(sel.alpha);
  eff["beta"] = round9(sel.beta);
  eff["m"] = round9(spec.circuit.reporter.m);
  eff["theta_gfp"] = round9(spec.circuit.reporter.theta_gfp);
  eff["theta_e"] = colony.theta_e && uses_eugenics(colony.protocol) ? ojson(round9(*colony.theta_e)) : ojson(nullptr);
  eff["response"] = response_json(spec.circuit.response);
  if (spec.circuit.transport) {
    eff["transport"] = {{"vmax", round9(spec.circuit.transport->vmax)},
                        {"michaelis", round9(spec.circuit.transport->michaelis)},
                        {"k2", round9(spec.circuit.transport->inhibitor_constant)}};
  }
  eff["normalization"] = spec.circuit.normalization == Normalization::OracleMax ? "oracle_max" : "none";
  eff["z_normalizer"] = round9(spec.z_normalizer);
  eff["y_ceiling"] = spec.y_ceiling ? ojson(round9(*spec.y_ceiling)) : ojson(nullptr);
  eff["detection"] = detection_json(spec.detection);
  if (spec.kind == ProblemKind::Hamiltonian3) {
    eff["p_hix"] = round9(colony.hix.p_hix);
    eff["p_accept"] = round9(colony.hix.p_accept);
    eff["hix_mode"] = colony.hix.mode == HixMode::Segment ? "segment" : "element";
    eff["segment_inversion"] = colony.hix.invert_segments;
  } else {
    eff["p_m"] = round9(colony.p_m);
  }
  eff["mutation_target"] = colony.mutation_target == MutationTarget::Both ? "both" : "daughter";
  eff["capacity"] = colony.capacity;
  eff["t_max"] = round9(colony.t_max);
  eff["sample_dt"] = round9(colony.sample_dt);

  ojson j;
  j["tool"] = "baga";
  j["version"] = kToolVersion;
  j["seed"] = colony.seed;
  j["config"] = config::serialize(effective);
  j["effective"] = std::move(eff);
  j["result"] = {{"halt", to_string(record.halt)},
                 {"end_time", round9(record.end_time)},
                 {"divisions", record.divisions},
                 {"culled", record.culled},
                 {"occurrences", record.occurrences.size()},
                 {"gfp_threshold_hits", record.gfp_threshold_hits},
                 {"final_colony_size", record.final_population.size()}};
  if (wall_seconds) j["wall_time_s"] = round9(*wall_seconds);
  j["files"] = {"manifest.json", "occurrences.csv", "census.csv", "fit.json", "growth.svg", "colony.svg"};
  return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> write_bundle(const std::filesystem::path& dir,
                                                const config::RunConfig& effective,
                                                const ColonyConfig& colony, const RunRecord& record,
                                                std::optional<double> wall_seconds) {
  std::filesystem::create_directories(dir);
  const auto fit = fit_occurrences(record.occurrences);
  const auto series = analysis::occurrences_to_series(analysis::occurrence_times(record));

  const std::vector<std::pair<std::string, std::string>> files = {
      {"manifest.json", manifest_json(effective, colony, record, wall_seconds)},
      {"occurrences.csv", occurrences_csv(record)},
      {"census.csv", census_csv(record)},
      {"fit.json", fit_json(fit)},
      {"growth.svg", plot::occurrence_growth_svg(series, fit.fit, false)},
      {"colony.svg", plot::colony_snapshot_svg(record.final_population, colony.problem)},
  };
  std::vector<std::filesystem::path> written;
  for (const auto& [name, content] : files) {
    write_file(dir / name, content);
    written.push_back(dir / name);
  }
  return written;
}

}  // namespace baga::output
