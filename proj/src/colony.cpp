#include "baga/colony.hpp"

#include <cmath>

#include <fmt/format.h>

#include "baga/errors.hpp"

namespace baga {

const char* to_string(Protocol p) {
  switch (p) {
    case Protocol::SP: return "SP";
    case Protocol::SPE: return "SPE";
    case Protocol::P: return "P";
    case Protocol::PE: return "PE";
  }
  return "SP";
}

std::optional<Protocol> parse_protocol(std::string_view s) {
  if (s == "SP") return Protocol::SP;
  if (s == "SPE") return Protocol::SPE;
  if (s == "P") return Protocol::P;
  if (s == "PE") return Protocol::PE;
  return std::nullopt;
}

bool uses_selection(Protocol p) { return p == Protocol::SP || p == Protocol::SPE; }
bool uses_eugenics(Protocol p) { return p == Protocol::SPE || p == Protocol::PE; }

const char* to_string(HaltReason r) {
  switch (r) {
    case HaltReason::TimeLimit: return "time_limit";
    case HaltReason::Capacity: return "capacity";
    case HaltReason::Extinction: return "extinction";
  }
  return "time_limit";
}

void validate(const ColonyConfig& config) {
  if (uses_eugenics(config.protocol) && !config.theta_e)
    throw ConfigError("protocol.theta_e", fmt::format("required for {}", to_string(config.protocol)));
  if (config.theta_e && !(*config.theta_e >= 0.0))
    throw ConfigError("protocol.theta_e", "must be >= 0");
  if (!(config.p_m >= 0.0 && config.p_m <= 1.0)) throw ConfigError("protocol.p_m", "outside [0,1]");
  if (!(config.hix.p_hix >= 0.0 && config.hix.p_hix <= 1.0))
    throw ConfigError("protocol.p_hix", "outside [0,1]");
  if (!(config.hix.p_accept >= 0.0 && config.hix.p_accept <= 1.0))
    throw ConfigError("protocol.p_accept", "outside [0,1]");
  if (config.capacity < 2) throw ConfigError("sim.capacity", "must be >= 2");
  if (!(config.t_max >= 0.0) || !std::isfinite(config.t_max))
    throw ConfigError("sim.t_max", "must be finite and >= 0");
  if (!(config.sample_dt > 0.0)) throw ConfigError("sim.sample_dt", "must be > 0");
  if (config.initial.order && !config.problem.schema.valueless_by_exception() &&
      !std::holds_alternative<SegmentedSchema>(config.problem.schema))
    throw ConfigError("protocol.initial_order", "only segmented problems take a segment order");
}

circuit::SelectionParams effective_selection(const ColonyConfig& config) {
  auto sel = config.problem.circuit.selection;
  if (!uses_selection(config.protocol)) sel.alpha = 0.0;
  return sel;
}

Plasmid initial_plasmid(const ColonyConfig& config, Rng& rng) {
  if (const auto* bin = std::get_if<BinarySchema>(&config.problem.schema))
    return new_binary_plasmid(bin->length, config.initial.policy, rng);
  if (config.initial.order) return new_hamiltonian_plasmid(*config.initial.order);
  return new_hamiltonian_plasmid(rng);
}

Colony::Colony(const ColonyConfig& config) : config_(config), rng_(config.seed) {
  validate(config_);
  selection_ = effective_selection(config_);
  config_.problem.circuit.selection = selection_;
  circuit::validate(selection_);

  record_.seed = config_.seed;
  Bacterium founder{.id = 0, .parent_id = std::nullopt, .plasmid = initial_plasmid(config_, rng_)};
  founder.k = selection_.k0;
  cells_.push_back(std::move(founder));
  alive_ = 1;
  push_schedule(cells_.front());
}

std::optional<double> Colony::schedule_division(const Bacterium& b, double now) {
  if (!b.alive || !(b.k > 0.0)) return std::nullopt;
  return now + rng_.exponential(b.k);
}

void Colony::push_schedule(Bacterium& b) {
  if (auto t = schedule_division(b, now_)) {
    b.next_division = *t;
    events_.push({*t, b.id});
  }
}

Plasmid Colony::vary(const Plasmid& p) {
  if (p.is_segmented()) return hin_hix_recombinase(p, config_.hix, rng_);
  return flip_bit_mutation(p, config_.p_m, rng_);
}

void Colony::note_optimal(Bacterium& b) {
  if (b.alive && b.is_optimal && !b.ever_optimal) {
    b.ever_optimal = true;
    record_.occurrences.push_back({now_, b.id, b.plasmid.to_string()});
  }
}

void Colony::evaluate_cell(Bacterium& b) {
  if (b.evaluated && !config_.force_reevaluation) return;
  const bool was_optimal = b.is_optimal && b.alive;

  const Phenotype ph = express(b.plasmid, config_.problem);
  b.iptg = ph.iptg;
  b.v0 = ph.v0;
  b.z = ph.z;
  b.gfp = ph.gfp;
  b.k = ph.growth_rate;
  b.fluorescence = ph.fluorescence;
  b.is_optimal = ph.optimal;
  b.evaluated = true;

  if (config_.theta_e && uses_eugenics(config_.protocol) &&
      !circuit::eugenic_check(b.gfp, *config_.theta_e)) {
    if (b.alive) {
      b.alive = false;
      --alive_;
      ++record_.culled;
    }
  }
  const bool now_optimal = b.is_optimal && b.alive;
  if (was_optimal && !now_optimal) --optimal_alive_;
  if (!was_optimal && now_optimal) ++optimal_alive_;
  note_optimal(b);
}

std::uint64_t Colony::divide(std::uint64_t id) {
  if (id >= cells_.size() || !cells_[id].alive) throw std::logic_error("divide on a dead cell");
  if (alive_ >= config_.capacity) throw std::logic_error("divide at capacity");

  ++record_.divisions;
  const std::uint64_t daughter_id = cells_.size();
  {
    const Bacterium& mother = cells_[id];
    Bacterium daughter = mother;
    daughter.id = daughter_id;
    daughter.parent_id = id;
    daughter.birth_time = now_;
    daughter.ever_optimal = false;
    cells_.push_back(std::move(daughter));
    ++alive_;
  }
  Bacterium& daughter = cells_.back();
  Bacterium& mother = cells_[id];
  // The copy carries the mother's cached phenotype but is not yet tallied.
  const bool inherited_optimal = daughter.is_optimal;
  daughter.is_optimal = false;

  Plasmid varied = vary(daughter.plasmid);
  if (varied != daughter.plasmid) {
    daughter.plasmid = std::move(varied);
    daughter.evaluated = false;
  }
  if (config_.mutation_target == MutationTarget::Both) {
    Plasmid m = vary(mother.plasmid);
    if (m != mother.plasmid) {
      mother.plasmid = std::move(m);
      mother.evaluated = false;
    }
  }

  const bool founder_fresh = !mother.evaluated;
  if (daughter.evaluated && !config_.force_reevaluation) {
    daughter.is_optimal = inherited_optimal;
    if (daughter.is_optimal) ++optimal_alive_;
    note_optimal(daughter);
  } else {
    evaluate_cell(daughter);
  }
  evaluate_cell(mother);

  const double theta_gfp = config_.problem.circuit.reporter.theta_gfp;
  if (daughter.gfp >= theta_gfp) ++record_.gfp_threshold_hits;
  if (founder_fresh && mother.gfp >= theta_gfp) ++record_.gfp_threshold_hits;

  push_schedule(mother);
  push_schedule(daughter);
  return daughter_id;
}

CensusSample Colony::census_now() const {
  CensusSample s;
  s.time = now_;
  double sum_z = 0.0;
  for (const auto& b : cells_) {
    if (!b.alive) continue;
    ++s.colony_size;
    if (b.is_optimal) ++s.optimal_count;
    sum_z += b.z;
  }
  s.mean_fitness = s.colony_size ? sum_z / static_cast<double>(s.colony_size) : 0.0;
  return s;
}

RunRecord Colony::run() {
  const double t_max = config_.t_max;
  std::size_t next_sample = 0;
  auto sample_time = [&](std::size_t i) { return static_cast<double>(i) * config_.sample_dt; };
  auto emit_until = [&](double t, bool inclusive) {
    while (sample_time(next_sample) < t || (inclusive && sample_time(next_sample) == t)) {
      if (sample_time(next_sample) > t_max) break;
      auto s = census_now();
      s.time = sample_time(next_sample);
      record_.census.push_back(s);
      ++next_sample;
    }
  };

  HaltReason halt = HaltReason::TimeLimit;
  double end_time = t_max;
  while (true) {
    if (alive_ == 0) {
      halt = HaltReason::Extinction;
      end_time = now_;
      break;
    }
    if (events_.empty()) break;
    const Event ev = events_.top();
    if (ev.time > t_max) break;
    events_.pop();
    const Bacterium& b = cells_[ev.id];
    if (!b.alive || b.next_division != ev.time) continue;

    emit_until(ev.time, false);
    now_ = ev.time;
    divide(ev.id);
    if (alive_ >= config_.capacity) {
      halt = HaltReason::Capacity;
      end_time = now_;
      break;
    }
  }

  now_ = std::max(now_, end_time);
  emit_until(end_time, true);
  if (record_.census.empty() || record_.census.back().time < end_time) {
    auto s = census_now();
    s.time = end_time;
    record_.census.push_back(s);
  }

  record_.halt = halt;
  record_.end_time = end_time;
  for (const auto& b : cells_)
    if (b.alive) record_.final_population.push_back(b);
  return std::move(record_);
}

RunRecord run(const ColonyConfig& config) { return Colony(config).run(); }

}  // namespace baga
