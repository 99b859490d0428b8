#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <algorithm>

#include "baga/analysis.hpp"
#include "baga/colony.hpp"
#include "baga/errors.hpp"

using namespace baga;

namespace {

ColonyConfig sine_config(Protocol protocol = Protocol::SP, std::uint64_t seed = 1) {
  ColonyConfig c;
  c.problem = make_problem(ProblemKind::SineRatio);
  c.protocol = protocol;
  c.seed = seed;
  if (uses_eugenics(protocol)) c.theta_e = 80.0;
  return c;
}

// Seed whose random founder carries `bits`.
std::uint64_t seed_with_founder(ColonyConfig c, const std::string& bits) {
  for (std::uint64_t s = 1; s < 10000; ++s) {
    c.seed = s;
    if (Colony(c).cells().front().plasmid.to_string() == bits) return s;
  }
  FAIL("no seed found");
  return 0;
}

bool same_records(const RunRecord& a, const RunRecord& b) {
  if (!(a.occurrences == b.occurrences && a.census == b.census && a.halt == b.halt &&
        a.end_time == b.end_time && a.divisions == b.divisions && a.culled == b.culled &&
        a.gfp_threshold_hits == b.gfp_threshold_hits && a.final_population.size() == b.final_population.size()))
    return false;
  for (std::size_t i = 0; i < a.final_population.size(); ++i) {
    const auto& x = a.final_population[i];
    const auto& y = b.final_population[i];
    if (x.id != y.id || x.plasmid != y.plasmid || x.k != y.k || x.gfp != y.gfp || x.z != y.z ||
        x.next_division != y.next_division || x.is_optimal != y.is_optimal)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("protocol names") {
  for (auto p : {Protocol::SP, Protocol::SPE, Protocol::P, Protocol::PE}) CHECK(parse_protocol(to_string(p)) == p);
  CHECK_FALSE(parse_protocol("S").has_value());
  CHECK(uses_selection(Protocol::SPE));
  CHECK_FALSE(uses_selection(Protocol::PE));
  CHECK(uses_eugenics(Protocol::PE));
  CHECK_FALSE(uses_eugenics(Protocol::P));
}

TEST_CASE("config validation") {
  auto c = sine_config(Protocol::SPE);
  c.theta_e.reset();
  try {
    validate(c);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key_path() == "protocol.theta_e");
  }
  c = sine_config();
  c.p_m = 1.2;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = sine_config();
  c.sample_dt = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);

  auto p = sine_config(Protocol::P);
  CHECK(effective_selection(p).alpha == 0.0);
  CHECK(effective_selection(sine_config(Protocol::SP)).alpha == 0.8);
}

TEST_CASE("colony initialization") {
  auto c = sine_config();
  c.initial.policy = InitPolicy::Zeros;
  Colony col(c);
  REQUIRE(col.cells().size() == 1);
  const auto& b = col.cells().front();
  CHECK(b.plasmid.to_string() == "0000");
  CHECK(col.now() == 0.0);
  CHECK(col.alive_count() == 1);
  CHECK(b.k == 0.03);
  CHECK(b.gfp == 0.0);
  CHECK(b.iptg == 0.0);
  CHECK(b.z == 0.0);
  CHECK(b.next_division > b.birth_time);

  Colony a(sine_config(Protocol::SP, 9)), a2(sine_config(Protocol::SP, 9));
  CHECK(a.cells().front().plasmid == a2.cells().front().plasmid);
  CHECK(a.cells().front().next_division == a2.cells().front().next_division);
}

TEST_CASE("division waiting times are exponential with rate k") {
  Colony col(sine_config());
  Bacterium b = col.cells().front();
  constexpr int kSamples = 100000;
  auto mean_wait = [&](double k) {
    b.k = k;
    double sum = 0;
    for (int i = 0; i < kSamples; ++i) sum += *col.schedule_division(b, 0.0);
    return sum / kSamples;
  };
  const double m1 = mean_wait(0.03);
  const double m2 = mean_wait(0.06);
  CHECK(m1 == doctest::Approx(1.0 / 0.03).epsilon(0.02));
  CHECK(m1 / m2 == doctest::Approx(2.0).epsilon(0.02));
  b.k = 0.0;
  CHECK_FALSE(col.schedule_division(b, 0.0).has_value());
}

TEST_CASE("division and variation") {
  SUBCASE("p_m = 0 copies the plasmid") {
    auto c = sine_config();
    c.p_m = 0.0;
    Colony col(c);
    const auto d = col.divide(0);
    CHECK(col.cells()[d].plasmid == col.cells()[0].plasmid);
    CHECK(col.cells()[d].parent_id == std::optional<std::uint64_t>(0));
  }
  SUBCASE("daughter-only full flip") {
    auto c = sine_config();
    c.p_m = 1.0;
    c.seed = seed_with_founder(c, "1011");
    Colony col(c);
    const auto d = col.divide(0);
    CHECK(col.cells()[0].plasmid.to_string() == "1011");
    CHECK(col.cells()[d].plasmid.to_string() == "0100");
  }
  SUBCASE("both cells vary") {
    auto c = sine_config();
    c.p_m = 1.0;
    c.mutation_target = MutationTarget::Both;
    c.seed = seed_with_founder(c, "1011");
    Colony col(c);
    const auto d = col.divide(0);
    CHECK(col.cells()[0].plasmid.to_string() == "0100");
    CHECK(col.cells()[d].plasmid.to_string() == "0100");
  }
  SUBCASE("hamiltonian cells vary by recombination only") {
    ColonyConfig c;
    c.problem = make_problem(ProblemKind::Hamiltonian3);
    c.protocol = Protocol::P;
    c.p_m = 1.0;  // would destroy the plasmid if flip-bit were used
    c.hix.p_hix = 1.0;
    c.hix.p_accept = 1.0;
    Colony col(c);
    for (int i = 0; i < 50; ++i) {
      const auto d = col.divide(static_cast<std::uint64_t>(i));
      const auto& p = col.cells()[d].plasmid;
      CHECK(p.is_segmented());
      CHECK(p != col.cells()[static_cast<std::size_t>(i)].plasmid);
    }
  }
}

TEST_CASE("cell evaluation") {
  auto c = sine_config();
  Colony col(c);
  Bacterium b = col.cells().front();
  b.plasmid = binary_plasmid_from_string("1011");
  b.evaluated = false;
  col.evaluate_cell(b);
  CHECK(b.z == doctest::Approx(0.99999).epsilon(1e-6));
  CHECK(b.gfp == doctest::Approx(149.9985).epsilon(1e-6));
  CHECK(b.k == doctest::Approx(0.03 + b.z * 0.08).epsilon(1e-12));
  CHECK(b.k == doctest::Approx(0.11).epsilon(1e-4));
  CHECK(b.is_optimal);

  Colony pcol(sine_config(Protocol::P));
  Bacterium pb = b;
  pb.evaluated = false;
  pcol.evaluate_cell(pb);
  CHECK(pb.k == 0.03);
  CHECK(pb.is_optimal);

  Bacterium zb = b;
  zb.plasmid = binary_plasmid_from_string("0000");
  zb.evaluated = false;
  col.evaluate_cell(zb);
  CHECK(zb.iptg == 0.0);
  CHECK(zb.z == 0.0);
  CHECK(zb.gfp == 0.0);
  CHECK(zb.k == 0.03);
  CHECK_FALSE(zb.is_optimal);
}

TEST_CASE("zero time limit") {
  auto c = sine_config();
  c.t_max = 0.0;
  const auto r = run(c);
  REQUIRE(r.census.size() == 1);
  CHECK(r.census[0].colony_size == 1);
  CHECK(r.occurrences.empty());
  CHECK(r.halt == HaltReason::TimeLimit);
}

TEST_CASE("sine ratio SP run finds only the optimum") {
  const auto r = run(sine_config());
  REQUIRE_FALSE(r.occurrences.empty());
  for (const auto& o : r.occurrences) CHECK(o.genome == "1011");
  for (std::size_t i = 1; i < r.occurrences.size(); ++i) CHECK(r.occurrences[i - 1].time < r.occurrences[i].time);
  CHECK(r.halt == HaltReason::Capacity);
  CHECK(r.final_population.size() == 5000);
}

TEST_CASE("runs are deterministic") {
  for (auto p : {Protocol::SP, Protocol::SPE, Protocol::P, Protocol::PE}) {
    const auto a = run(sine_config(p, 4));
    const auto b = run(sine_config(p, 4));
    CHECK(same_records(a, b));
  }
  CHECK_FALSE(same_records(run(sine_config(Protocol::SP, 4)), run(sine_config(Protocol::SP, 5))));
}

TEST_CASE("reusing cached phenotypes does not change the run") {
  for (auto p : {Protocol::SP, Protocol::SPE, Protocol::P, Protocol::PE}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      auto c = sine_config(p, seed);
      c.mutation_target = seed == 3 ? MutationTarget::Both : MutationTarget::DaughterOnly;
      const auto cached = run(c);
      c.force_reevaluation = true;
      const auto forced = run(c);
      CHECK(same_records(cached, forced));
    }
  }
  ColonyConfig h;
  h.problem = make_problem(ProblemKind::Hamiltonian3);
  h.protocol = Protocol::P;
  const auto cached = run(h);
  h.force_reevaluation = true;
  CHECK(same_records(cached, run(h)));
}

TEST_CASE("census invariants without eugenics") {
  for (auto p : {Protocol::SP, Protocol::P}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto r = run(sine_config(p, seed));
      REQUIRE(r.census.size() >= 2);
      for (std::size_t i = 1; i < r.census.size(); ++i) {
        CHECK(r.census[i].time > r.census[i - 1].time);
        CHECK(r.census[i].colony_size >= r.census[i - 1].colony_size);
        CHECK(r.census[i].optimal_count >= r.census[i - 1].optimal_count);
      }
      // Daughter-only variation: optimal cells never lose optimality, so the
      // census count equals the number of occurrences so far.
      for (const auto& s : r.census) {
        const auto seen = std::count_if(r.occurrences.begin(), r.occurrences.end(),
                                        [&](const Occurrence& o) { return o.time <= s.time; });
        CHECK(static_cast<std::size_t>(seen) == s.optimal_count);
      }
      CHECK(r.culled == 0);
    }
  }
}

TEST_CASE("eugenic runs keep only cells above the threshold") {
  for (auto p : {Protocol::SPE, Protocol::PE}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto c = sine_config(p, seed);
      const auto r = run(c);
      for (const auto& b : r.final_population)
        if (b.evaluated) CHECK(b.gfp > *c.theta_e);
      if (r.halt == HaltReason::Extinction) CHECK(r.final_population.empty());
      // Culled cells are never recorded as occurrences; every occurrence is
      // an optimum that passed the cut.
      for (const auto& o : r.occurrences) CHECK(o.genome == "1011");
    }
  }
}

TEST_CASE("no selection means constant growth rate") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto r = run(sine_config(Protocol::P, seed));
    for (const auto& b : r.final_population) REQUIRE(b.k == 0.03);
  }
}

TEST_CASE("occurrences satisfy the detection rule on replay") {
  for (auto kind : {ProblemKind::SineRatio, ProblemKind::Booth, ProblemKind::KnapsackStandard,
                    ProblemKind::KnapsackImproved}) {
    ColonyConfig c;
    c.problem = make_problem(kind);
    c.p_m = kind == ProblemKind::Booth ? 0.5 : 0.3;
    const auto r = run(c);
    const auto oracle = brute_force_oracle(c.problem);
    std::set<std::string> optimal;
    for (const auto& p : oracle.optimal) optimal.insert(p.to_string());
    for (const auto& o : r.occurrences) {
      const auto p = binary_plasmid_from_string(o.genome);
      CHECK(express(p, c.problem).optimal);
      CHECK(optimal.count(o.genome) == 1);
    }
  }
}

TEST_CASE("pure growth follows the exponential law") {
  std::vector<double> slopes;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto c = sine_config(Protocol::P, seed);
    c.capacity = 200000;
    c.t_max = 300;
    c.sample_dt = 10;
    const auto r = run(c);
    std::vector<analysis::Point> pts;
    for (const auto& s : r.census) pts.push_back({s.time, static_cast<double>(s.colony_size)});
    slopes.push_back(analysis::fit_exponential(pts).b);
  }
  const double mean = std::accumulate(slopes.begin(), slopes.end(), 0.0) / static_cast<double>(slopes.size());
  CHECK(mean == doctest::Approx(0.03).epsilon(0.10));
}

TEST_CASE("capacity and extinction halts") {
  auto c = sine_config();
  c.capacity = 50;
  auto r = run(c);
  CHECK(r.halt == HaltReason::Capacity);
  CHECK(r.final_population.size() == 50);
  CHECK(r.census.back().time == r.end_time);
  CHECK(r.census.back().colony_size == 50);

  // theta_e above every reachable gfp culls everything at the first division.
  auto e = sine_config(Protocol::PE);
  e.theta_e = 1000.0;
  r = run(e);
  CHECK(r.halt == HaltReason::Extinction);
  CHECK(r.final_population.empty());
  CHECK(r.culled == 2);
  CHECK(r.census.back().colony_size == 0);
}
