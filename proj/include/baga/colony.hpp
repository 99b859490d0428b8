#pragma once

// Event-driven colony simulation. Every living cell divides as a Poisson
// process with its own growth rate k; the earliest pending division is
// processed next.

#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "baga/genome.hpp"
#include "baga/problems.hpp"
#include "baga/rng.hpp"

namespace baga {

enum class Protocol { SP, SPE, P, PE };

const char* to_string(Protocol p);
std::optional<Protocol> parse_protocol(std::string_view s);
bool uses_selection(Protocol p);
bool uses_eugenics(Protocol p);

enum class MutationTarget { DaughterOnly, Both };

// Founder plasmid: all zeros, uniformly random bits, or (segmented
// problems) a random or fixed segment order.
struct InitialPlasmid {
  InitPolicy policy = InitPolicy::RandomUniform;
  std::optional<SegmentOrder> order;
  bool operator==(const InitialPlasmid&) const = default;
};

struct ColonyConfig {
  ProblemSpec problem;
  Protocol protocol = Protocol::SP;
  double p_m = 0.3;
  HixParams hix;
  MutationTarget mutation_target = MutationTarget::DaughterOnly;
  InitialPlasmid initial;
  std::optional<double> theta_e;
  std::size_t capacity = 5000;
  double t_max = 1000.0;
  double sample_dt = 5.0;
  std::uint64_t seed = 1;
  // Re-evaluate cells whose plasmid did not change (off: reuse the cached
  // phenotype; observable behavior is identical).
  bool force_reevaluation = false;
};

// Throws ConfigError on inconsistent settings.
void validate(const ColonyConfig& config);

// Selection parameters after the protocol is applied (P/PE force alpha=0).
circuit::SelectionParams effective_selection(const ColonyConfig& config);

struct Bacterium {
  std::uint64_t id = 0;
  std::optional<std::uint64_t> parent_id;
  Plasmid plasmid;
  double iptg = 0.0;
  double v0 = 0.0;
  double z = 0.0;
  double gfp = 0.0;
  double k = 0.0;
  double birth_time = 0.0;
  double next_division = 0.0;
  bool alive = true;
  bool is_optimal = false;
  bool evaluated = false;
  bool ever_optimal = false;
  Fluorescence fluorescence = Fluorescence::None;
};

struct Occurrence {
  double time = 0.0;
  std::uint64_t bacterium_id = 0;
  std::string genome;
  bool operator==(const Occurrence&) const = default;
};

struct CensusSample {
  double time = 0.0;
  std::size_t colony_size = 0;
  std::size_t optimal_count = 0;
  double mean_fitness = 0.0;
  bool operator==(const CensusSample&) const = default;
};

enum class HaltReason { TimeLimit, Capacity, Extinction };
const char* to_string(HaltReason r);

struct RunRecord {
  std::vector<Occurrence> occurrences;
  std::vector<CensusSample> census;
  std::vector<Bacterium> final_population;
  HaltReason halt = HaltReason::TimeLimit;
  double end_time = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t divisions = 0;
  std::uint64_t culled = 0;
  // Cells born with gfp >= theta_gfp, regardless of the detection rule.
  std::uint64_t gfp_threshold_hits = 0;
};

// Simulation state. Cells are stored by id; dead cells stay in place.
class Colony {
 public:
  explicit Colony(const ColonyConfig& config);

  const ColonyConfig& config() const { return config_; }
  const std::vector<Bacterium>& cells() const { return cells_; }
  double now() const { return now_; }
  std::size_t alive_count() const { return alive_; }
  std::size_t optimal_count() const { return optimal_alive_; }
  Rng& rng() { return rng_; }

  // Waiting time drawn for `b` at time `now`; never schedules when k <= 0.
  std::optional<double> schedule_division(const Bacterium& b, double now);

  // Splits cell `id`: daughter inherits the plasmid, variation is applied,
  // both cells are evaluated and rescheduled. Returns the daughter id.
  std::uint64_t divide(std::uint64_t id);

  // Recomputes the phenotype of `b` if its plasmid changed (or it was never
  // evaluated) and applies detection and the eugenic rule.
  void evaluate_cell(Bacterium& b);

  // Processes events up to t_max or capacity and returns the record.
  RunRecord run();

  CensusSample census_now() const;

 private:
  struct Event {
    double time;
    std::uint64_t id;
    bool operator>(const Event& o) const { return time > o.time || (time == o.time && id > o.id); }
  };

  Plasmid vary(const Plasmid& p);
  void push_schedule(Bacterium& b);
  void note_optimal(Bacterium& b);

  ColonyConfig config_;
  circuit::SelectionParams selection_;
  Rng rng_;
  std::vector<Bacterium> cells_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
  double now_ = 0.0;
  std::size_t alive_ = 0;
  std::size_t optimal_alive_ = 0;
  RunRecord record_;
};

// Founder plasmid per the initial policy.
Plasmid initial_plasmid(const ColonyConfig& config, Rng& rng);

RunRecord run(const ColonyConfig& config);

}  // namespace baga
