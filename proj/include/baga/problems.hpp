#pragma once

// The benchmark problems: objective evaluation, plasmid -> IPTG mapping,
// feasibility, optimal-detection rule and an exhaustive oracle for each.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "baga/circuit.hpp"
#include "baga/genome.hpp"

namespace baga {

enum class ProblemKind { SineRatio, Booth, KnapsackStandard, KnapsackImproved, Hamiltonian3 };
enum class Direction { Maximize, Minimize };

std::string_view problem_name(ProblemKind kind);
std::optional<ProblemKind> parse_problem_name(std::string_view name);
const std::vector<std::string_view>& problem_names();

struct KnapsackInstance {
  std::vector<double> values;
  std::vector<double> weights;
  double capacity = 0.0;
  bool operator==(const KnapsackInstance&) const = default;
};

void validate(const KnapsackInstance& inst);

// Table-3 instance, W = 100.
KnapsackInstance default_knapsack();

enum class Normalization { None, OracleMax };

struct CircuitConfig {
  circuit::ResponseFn response;
  // Present for the inhibitor-penalty knapsack only.
  std::optional<circuit::TransportParams> transport;
  circuit::SelectionParams selection;
  circuit::ReporterParams reporter;
  Normalization normalization = Normalization::None;
  bool operator==(const CircuitConfig&) const = default;
};

struct GfpThreshold {
  double theta = 149.0;
  bool operator==(const GfpThreshold&) const = default;
};
struct PlasmidMatch {
  std::set<std::string> genomes;
  bool operator==(const PlasmidMatch&) const = default;
};
struct FluorescenceMatch {
  Fluorescence color = Fluorescence::Yellow;
  bool operator==(const FluorescenceMatch&) const = default;
};
using DetectionRule = std::variant<GfpThreshold, PlasmidMatch, FluorescenceMatch>;

struct ProblemSpec {
  ProblemKind kind = ProblemKind::SineRatio;
  Schema schema = BinarySchema{4};
  Direction direction = Direction::Maximize;
  CircuitConfig circuit;
  DetectionRule detection = GfpThreshold{};
  // Minimization adapter: worst objective over the domain.
  std::optional<double> y_ceiling;
  std::optional<KnapsackInstance> knapsack;
  // Divisor applied to raw fitness under Normalization::OracleMax.
  double z_normalizer = 1.0;

  std::string name() const { return std::string(problem_name(kind)); }
};

// Default configuration of each benchmark with the published parameters.
ProblemSpec make_problem(ProblemKind kind);

// Recomputes derived fields (y_ceiling when unset, oracle-max normalizer,
// default PlasmidMatch genomes) and validates consistency. Call after
// editing a spec by hand.
void finalize(ProblemSpec& spec);

// Objective functions.
double eval_sine_ratio(int x);
double eval_booth(int x1, int x2);

struct KnapsackEval {
  double profit = 0.0;
  double weight = 0.0;
  bool feasible = true;
};
KnapsackEval eval_knapsack(const Plasmid& x, const KnapsackInstance& inst);

enum class KnapsackMode { Standard, Improved };

// Raw (unnormalized) knapsack fitness chain. For Improved the transport
// parameters and the fitness Hill function are required.
struct KnapsackFitness {
  double inhibitor = 0.0;
  double v0 = 0.0;
  double z = 0.0;
};
KnapsackFitness knapsack_fitness(const Plasmid& x, const KnapsackInstance& inst,
                                 const circuit::HillResponse& fitness,
                                 const std::optional<circuit::TransportParams>& transport,
                                 KnapsackMode mode);

// Objective value of a plasmid (profit for knapsack; 1 for a Yellow
// Hamiltonian plasmid, 0 otherwise).
double objective(const Plasmid& p, const ProblemSpec& spec);
bool feasible(const Plasmid& p, const ProblemSpec& spec);
double iptg_of(const Plasmid& p, const ProblemSpec& spec);

// Everything the circuit computes for one plasmid.
struct Phenotype {
  double objective = 0.0;
  double iptg = 0.0;
  bool iptg_clamped = false;
  double v0 = 0.0;
  double z_raw = 0.0;
  double z = 0.0;
  double gfp = 0.0;
  double growth_rate = 0.0;
  bool feasible = true;
  Fluorescence fluorescence = Fluorescence::None;
  bool optimal = false;
};

Phenotype express(const Plasmid& p, const ProblemSpec& spec);

bool is_optimal(const Plasmid& p, const Phenotype& ph, const ProblemSpec& spec);

// Every plasmid in the search space (2^l bit strings or the 6 segment
// orders), in enumeration order.
std::vector<Plasmid> enumerate_search_space(const ProblemSpec& spec);

struct OracleRow {
  Plasmid plasmid;
  Phenotype phenotype;
};

struct OracleResult {
  std::vector<Plasmid> optimal;
  double optimal_objective = 0.0;
  std::vector<OracleRow> table;
};

// Exhaustive enumeration (search space <= 2^20).
OracleResult brute_force_oracle(const ProblemSpec& spec);

}  // namespace baga
