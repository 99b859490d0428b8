#include <doctest.h>

#include <cstdlib>

#include "baga/parallel.hpp"

using namespace baga;

namespace {

ColonyConfig base(ProblemKind kind, Protocol protocol) {
  ColonyConfig c;
  c.problem = make_problem(kind);
  c.protocol = protocol;
  if (uses_eugenics(protocol)) c.theta_e = 80.0;
  c.capacity = 1500;
  return c;
}

void check_same(const std::vector<RunRecord>& a, const std::vector<RunRecord>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].seed == b[i].seed);
    CHECK(a[i].occurrences == b[i].occurrences);
    CHECK(a[i].census == b[i].census);
    CHECK(a[i].divisions == b[i].divisions);
    CHECK(a[i].end_time == b[i].end_time);
  }
}

}  // namespace

TEST_CASE("parallel sweep equals the serial reference") {
  const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8};
  for (auto p : {Protocol::SP, Protocol::PE}) {
    const auto c = base(ProblemKind::SineRatio, p);
    const auto serial = parallel::sweep_serial(c, seeds);
    for (int threads : {1, 2, 4}) check_same(serial, parallel::sweep_omp(c, seeds, threads));
    for (std::size_t i = 0; i < seeds.size(); ++i) CHECK(serial[i].seed == seeds[i]);
  }
  check_same(parallel::sweep_serial(base(ProblemKind::Hamiltonian3, Protocol::P), seeds),
             parallel::sweep_omp(base(ProblemKind::Hamiltonian3, Protocol::P), seeds, 3));
}

TEST_CASE("parallel sweep propagates errors") {
  auto c = base(ProblemKind::SineRatio, Protocol::SPE);
  c.theta_e.reset();
  CHECK_THROWS(parallel::sweep_omp(c, {1, 2, 3}, 2));
}

TEST_CASE("parallel oracle equals the serial oracle") {
  for (auto kind : {ProblemKind::SineRatio, ProblemKind::Booth, ProblemKind::KnapsackStandard,
                    ProblemKind::KnapsackImproved, ProblemKind::Hamiltonian3}) {
    const auto spec = make_problem(kind);
    const auto ref = brute_force_oracle(spec);
    for (int threads : {1, 2, 5}) {
      const auto got = parallel::oracle_omp(spec, threads);
      CHECK(got.optimal == ref.optimal);
      CHECK(got.optimal_objective == ref.optimal_objective);
      REQUIRE(got.table.size() == ref.table.size());
      for (std::size_t i = 0; i < ref.table.size(); ++i) {
        CHECK(got.table[i].plasmid == ref.table[i].plasmid);
        CHECK(got.table[i].phenotype.gfp == ref.table[i].phenotype.gfp);
      }
    }
  }
}

TEST_CASE("thread cap from the environment") {
  setenv("BAGA_THREADS", "3", 1);
  CHECK(parallel::threads_from_env() == 3);
  setenv("BAGA_THREADS", "zero", 1);
  CHECK(parallel::threads_from_env() == 0);
  unsetenv("BAGA_THREADS");
  CHECK(parallel::threads_from_env() == 0);
}
