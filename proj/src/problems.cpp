#include "baga/problems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "baga/errors.hpp"

namespace baga {

namespace {

constexpr std::array<std::string_view, 5> kNames = {
    "sine_ratio", "booth", "knapsack_standard", "knapsack_improved", "hamiltonian3"};

std::size_t binary_length(const ProblemSpec& spec) {
  const auto* bin = std::get_if<BinarySchema>(&spec.schema);
  if (bin == nullptr) throw SchemaError(spec.name() + " needs a binary schema");
  return bin->length;
}

void check_schema(const Plasmid& p, const ProblemSpec& spec) {
  if (p.schema() != spec.schema)
    throw SchemaError(fmt::format("plasmid schema does not match problem {}", spec.name()));
}

const KnapsackInstance& knapsack_of(const ProblemSpec& spec) {
  if (!spec.knapsack) throw ConfigError("problem", spec.name() + " has no knapsack instance");
  return *spec.knapsack;
}

bool is_knapsack(ProblemKind kind) {
  return kind == ProblemKind::KnapsackStandard || kind == ProblemKind::KnapsackImproved;
}

}  // namespace

std::string_view problem_name(ProblemKind kind) { return kNames[static_cast<std::size_t>(kind)]; }

std::optional<ProblemKind> parse_problem_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name) return static_cast<ProblemKind>(i);
  return std::nullopt;
}

const std::vector<std::string_view>& problem_names() {
  static const std::vector<std::string_view> names(kNames.begin(), kNames.end());
  return names;
}

void validate(const KnapsackInstance& inst) {
  if (inst.values.empty() || inst.values.size() != inst.weights.size())
    throw ParameterError("knapsack values and weights must be non-empty and equally long");
  for (double v : inst.values)
    if (!(v > 0.0)) throw ParameterError("knapsack values must be > 0");
  for (double w : inst.weights)
    if (!(w > 0.0)) throw ParameterError("knapsack weights must be > 0");
  if (!(inst.capacity > 0.0)) throw ParameterError("knapsack capacity must be > 0");
}

KnapsackInstance default_knapsack() { return {{50, 55, 35}, {65, 45, 55}, 100}; }

double eval_sine_ratio(int x) {
  if (x < 0 || x > 15) throw ParameterError(fmt::format("sine-ratio x={} outside [0,15]", x));
  const double xd = x;
  return (xd - 5.0) / (2.0 + std::sin(xd));
}

double eval_booth(int x1, int x2) {
  if (x1 < 0 || x1 > 7 || x2 < 0 || x2 > 7)
    throw ParameterError(fmt::format("Booth ({}, {}) outside [0,7]^2", x1, x2));
  const double a = x1 + 2.0 * x2 - 7.0;
  const double b = 2.0 * x1 + x2 - 5.0;
  return a * a + b * b;
}

KnapsackEval eval_knapsack(const Plasmid& x, const KnapsackInstance& inst) {
  if (!x.is_binary()) throw SchemaError("knapsack genome must be binary");
  if (x.size() != inst.values.size())
    throw SchemaError(fmt::format("knapsack genome has {} bits for {} items", x.size(),
                                  inst.values.size()));
  KnapsackEval out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.profit += inst.values[i] * x[i];
    out.weight += inst.weights[i] * x[i];
  }
  out.feasible = out.weight <= inst.capacity;
  return out;
}

KnapsackFitness knapsack_fitness(const Plasmid& x, const KnapsackInstance& inst,
                                 const circuit::HillResponse& fitness,
                                 const std::optional<circuit::TransportParams>& transport,
                                 KnapsackMode mode) {
  const auto ev = eval_knapsack(x, inst);
  KnapsackFitness out;
  if (mode == KnapsackMode::Standard) {
    out.z = circuit::hill_response(ev.profit, fitness.vmax, fitness.half_saturation,
                                   fitness.exponent);
    return out;
  }
  if (!transport) throw ParameterError("improved knapsack fitness needs transport parameters");
  out.inhibitor = std::max(0.0, ev.weight - inst.capacity);
  out.v0 = circuit::transport_velocity(ev.profit, out.inhibitor, *transport);
  out.z = circuit::hill_response(out.v0, fitness.vmax, fitness.half_saturation, fitness.exponent);
  return out;
}

double objective(const Plasmid& p, const ProblemSpec& spec) {
  check_schema(p, spec);
  switch (spec.kind) {
    case ProblemKind::SineRatio:
      return eval_sine_ratio(static_cast<int>(decode_unsigned(p, 0, p.size())));
    case ProblemKind::Booth: {
      const std::size_t half = p.size() / 2;
      return eval_booth(static_cast<int>(decode_unsigned(p, 0, half)),
                        static_cast<int>(decode_unsigned(p, half, p.size())));
    }
    case ProblemKind::KnapsackStandard:
    case ProblemKind::KnapsackImproved:
      return eval_knapsack(p, knapsack_of(spec)).profit;
    case ProblemKind::Hamiltonian3:
      return detect_fluorescence(p) == Fluorescence::Yellow ? 1.0 : 0.0;
  }
  return 0.0;
}

bool feasible(const Plasmid& p, const ProblemSpec& spec) {
  if (is_knapsack(spec.kind)) return eval_knapsack(p, knapsack_of(spec)).feasible;
  return true;
}

double iptg_of(const Plasmid& p, const ProblemSpec& spec) {
  if (spec.kind == ProblemKind::Hamiltonian3) return 0.0;
  const double y = objective(p, spec);
  if (spec.direction == Direction::Maximize) return circuit::clamp_concentration(y).value;
  if (!spec.y_ceiling) throw ConfigError("problem.y_ceiling", "minimization needs a y ceiling");
  const double ceiling = *spec.y_ceiling;
  if (!(ceiling > 0.0)) throw ConfigError("problem.y_ceiling", "y ceiling must be > 0");
  const double target = std::clamp((ceiling - y) / ceiling, 0.0, 1.0);
  return circuit::inverse_response(spec.circuit.response, target);
}

Phenotype express(const Plasmid& p, const ProblemSpec& spec) {
  check_schema(p, spec);
  Phenotype ph;
  ph.objective = objective(p, spec);
  ph.feasible = feasible(p, spec);

  if (spec.kind == ProblemKind::Hamiltonian3) {
    ph.fluorescence = detect_fluorescence(p);
  } else {
    if (spec.direction == Direction::Maximize) {
      const auto c = circuit::clamp_concentration(ph.objective);
      ph.iptg = c.value;
      ph.iptg_clamped = c.clamped;
    } else {
      ph.iptg = iptg_of(p, spec);
    }
    if (spec.kind == ProblemKind::KnapsackImproved) {
      const auto* hill = std::get_if<circuit::HillResponse>(&spec.circuit.response);
      if (hill == nullptr) throw ConfigError("circuit.response", "improved knapsack needs a Hill response");
      const auto kf = knapsack_fitness(p, knapsack_of(spec), *hill, spec.circuit.transport,
                                       KnapsackMode::Improved);
      ph.v0 = kf.v0;
      ph.z_raw = kf.z;
    } else {
      ph.z_raw = circuit::respond(spec.circuit.response, ph.iptg);
    }
  }

  ph.z = spec.circuit.normalization == Normalization::OracleMax ? ph.z_raw / spec.z_normalizer
                                                                 : ph.z_raw;
  ph.gfp = circuit::gfp_level(ph.z, spec.circuit.reporter.m);
  ph.growth_rate = circuit::updated_growth_rate(ph.z, spec.circuit.selection);
  ph.optimal = is_optimal(p, ph, spec);
  return ph;
}

bool is_optimal(const Plasmid& p, const Phenotype& ph, const ProblemSpec& spec) {
  return std::visit(
      [&](const auto& rule) -> bool {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, GfpThreshold>) {
          return ph.gfp >= rule.theta;
        } else if constexpr (std::is_same_v<R, PlasmidMatch>) {
          return rule.genomes.contains(p.to_string());
        } else {
          return ph.fluorescence == rule.color;
        }
      },
      spec.detection);
}

std::vector<Plasmid> enumerate_search_space(const ProblemSpec& spec) {
  std::vector<Plasmid> out;
  if (std::holds_alternative<SegmentedSchema>(spec.schema)) {
    if (spec.kind != ProblemKind::Hamiltonian3)
      throw SchemaError("only the Hamiltonian problem has a segmented search space");
    for (const auto& order : all_segment_orders()) out.push_back(new_hamiltonian_plasmid(order));
    return out;
  }
  const std::size_t l = binary_length(spec);
  if (l > 20) throw ParameterError("search space larger than 2^20");
  out.reserve(std::size_t{1} << l);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << l); ++v) out.push_back(encode_unsigned(v, l));
  return out;
}

OracleResult brute_force_oracle(const ProblemSpec& spec) {
  OracleResult result;
  const bool minimize = spec.direction == Direction::Minimize;
  double best = minimize ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
  for (auto& p : enumerate_search_space(spec)) {
    auto ph = express(p, spec);
    if (ph.feasible) {
      const bool better = minimize ? ph.objective < best : ph.objective > best;
      if (better) {
        best = ph.objective;
        result.optimal.clear();
      }
      if (ph.objective == best) result.optimal.push_back(p);
    }
    result.table.push_back({std::move(p), ph});
  }
  result.optimal_objective = best;
  return result;
}

void finalize(ProblemSpec& spec) {
  circuit::validate(spec.circuit.response);
  circuit::validate(spec.circuit.selection);
  circuit::validate(spec.circuit.reporter);
  if (spec.circuit.transport) circuit::validate(*spec.circuit.transport);

  const bool segmented = std::holds_alternative<SegmentedSchema>(spec.schema);
  if (segmented != (spec.kind == ProblemKind::Hamiltonian3))
    throw ConfigError("problem", "schema does not match problem " + spec.name());
  if (std::holds_alternative<FluorescenceMatch>(spec.detection) && !segmented)
    throw ConfigError("detection.rule", "fluorescence detection needs a segmented plasmid");

  if (is_knapsack(spec.kind)) {
    validate(knapsack_of(spec));
    if (binary_length(spec) != spec.knapsack->values.size())
      throw ConfigError("problem", "plasmid length must equal the number of knapsack items");
  }
  if (spec.kind == ProblemKind::KnapsackImproved && !spec.circuit.transport)
    throw ConfigError("circuit.transport", "improved knapsack needs transport parameters");

  // Search-space scans below must not see a stale normalizer.
  spec.z_normalizer = 1.0;
  if (spec.direction == Direction::Minimize && !spec.y_ceiling) {
    double ceiling = 0.0;
    for (const auto& p : enumerate_search_space(spec)) ceiling = std::max(ceiling, objective(p, spec));
    spec.y_ceiling = ceiling;
  }
  if (spec.circuit.normalization == Normalization::OracleMax) {
    double zmax = 0.0;
    for (const auto& p : enumerate_search_space(spec)) zmax = std::max(zmax, express(p, spec).z_raw);
    if (!(zmax > 0.0)) throw ConfigError("circuit.normalize", "oracle maximum fitness is zero");
    spec.z_normalizer = zmax;
  }
  if (auto* match = std::get_if<PlasmidMatch>(&spec.detection); match && match->genomes.empty()) {
    // Placeholder rule so the oracle scan does not recurse into detection.
    spec.detection = GfpThreshold{std::numeric_limits<double>::infinity()};
    PlasmidMatch filled;
    for (const auto& p : brute_force_oracle(spec).optimal) filled.genomes.insert(p.to_string());
    spec.detection = std::move(filled);
  }
}

ProblemSpec make_problem(ProblemKind kind) {
  ProblemSpec spec;
  spec.kind = kind;
  switch (kind) {
    case ProblemKind::SineRatio:
      spec.schema = BinarySchema{4};
      spec.circuit.response = circuit::LinearResponse{10.0, 60.0};
      spec.circuit.selection = {0.03, 0.8, 10.0};
      spec.circuit.reporter = {150.0, 149.0};
      spec.detection = GfpThreshold{149.0};
      break;
    case ProblemKind::Booth:
      spec.schema = BinarySchema{6};
      spec.direction = Direction::Minimize;
      spec.circuit.response = circuit::LinearResponse{10.0, 7000.0};
      spec.circuit.selection = {0.03, 0.8, 1.0};
      spec.circuit.reporter = {150.0, 149.0};
      spec.detection = PlasmidMatch{};
      break;
    case ProblemKind::KnapsackStandard:
      spec.schema = BinarySchema{3};
      spec.knapsack = default_knapsack();
      spec.circuit.response = circuit::HillResponse{1.0, 27.0, 6.0};
      spec.circuit.selection = {0.03, 2.0, 10.0};
      spec.circuit.reporter = {150.0, 145.0};
      spec.detection = PlasmidMatch{};
      break;
    case ProblemKind::KnapsackImproved: {
      spec.schema = BinarySchema{3};
      spec.knapsack = default_knapsack();
      const double k_t = circuit::michaelis_from_values(spec.knapsack->values, 3);
      spec.circuit.response = circuit::HillResponse{1.0, k_t, 3.0};
      spec.circuit.transport = circuit::TransportParams{1.0, k_t, 0.02};
      spec.circuit.selection = {0.03, 2.0, 10.0};
      spec.circuit.reporter = {150.0, 145.0};
      spec.circuit.normalization = Normalization::OracleMax;
      spec.detection = PlasmidMatch{};
      break;
    }
    case ProblemKind::Hamiltonian3:
      spec.schema = hamiltonian_schema();
      spec.circuit.response = circuit::LinearResponse{10.0, 60.0};
      spec.circuit.selection = {0.03, 0.0, 1.0};
      spec.circuit.reporter = {150.0, 149.0};
      spec.detection = FluorescenceMatch{Fluorescence::Yellow};
      break;
  }
  finalize(spec);
  return spec;
}

}  // namespace baga
