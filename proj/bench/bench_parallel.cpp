// Serial reference vs OpenMP kernel: multi-seed sweep and oracle scan.

#include <benchmark/benchmark.h>

#include <filesystem>
#include <numeric>

#include "baga/config.hpp"
#include "baga/parallel.hpp"

namespace {

baga::ColonyConfig sine_config() {
  const auto path = std::filesystem::path(BAGA_SOURCE_DIR) / "configs" / "sine_ratio_sp.toml";
  return baga::config::to_colony_config(baga::config::load(path));
}

std::vector<std::uint64_t> seed_list(std::int64_t n) {
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(n));
  std::iota(seeds.begin(), seeds.end(), 1);
  return seeds;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto cfg = sine_config();
  const auto seeds = seed_list(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(baga::parallel::sweep_serial(cfg, seeds));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepOmp(benchmark::State& state) {
  const auto cfg = sine_config();
  const auto seeds = seed_list(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(baga::parallel::sweep_omp(cfg, seeds));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_OracleSerial(benchmark::State& state) {
  const auto spec = baga::make_problem(static_cast<baga::ProblemKind>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(baga::brute_force_oracle(spec));
}

void BM_OracleOmp(benchmark::State& state) {
  const auto spec = baga::make_problem(static_cast<baga::ProblemKind>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(baga::parallel::oracle_omp(spec));
}

void problem_args(benchmark::internal::Benchmark* b) {
  for (auto kind : {baga::ProblemKind::SineRatio, baga::ProblemKind::Booth, baga::ProblemKind::KnapsackImproved,
                    baga::ProblemKind::Hamiltonian3})
    b->Arg(static_cast<std::int64_t>(kind));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepOmp)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSerial)->Apply(problem_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_OracleOmp)->Apply(problem_args)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
