#pragma once

// OpenMP kernels and the serial reference implementations they are tested
// against. A single colony run is sequential; parallelism is across
// independent seeds and across the oracle's search space.

#include <cstdint>
#include <vector>

#include "baga/colony.hpp"
#include "baga/problems.hpp"

namespace baga::parallel {

// Threads requested through BAGA_THREADS, or 0 when unset/invalid.
int threads_from_env();

// One run per seed; result[i] belongs to seeds[i].
std::vector<RunRecord> sweep_serial(const ColonyConfig& base, const std::vector<std::uint64_t>& seeds);
std::vector<RunRecord> sweep_omp(const ColonyConfig& base, const std::vector<std::uint64_t>& seeds,
                                 int max_threads = 0);

// Same result as brute_force_oracle, with the phenotype scan split across
// threads.
OracleResult oracle_omp(const ProblemSpec& spec, int max_threads = 0);

}  // namespace baga::parallel
