#include "baga/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <limits>
#include <optional>
#include <string>

#include <omp.h>

namespace baga::parallel {

int threads_from_env() {
  const char* raw = std::getenv("BAGA_THREADS");
  if (raw == nullptr) return 0;
  try {
    const int n = std::stoi(raw);
    return n > 0 ? n : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

std::vector<RunRecord> sweep_serial(const ColonyConfig& base, const std::vector<std::uint64_t>& seeds) {
  std::vector<RunRecord> out;
  out.reserve(seeds.size());
  for (auto seed : seeds) {
    ColonyConfig cfg = base;
    cfg.seed = seed;
    out.push_back(run(cfg));
  }
  return out;
}

std::vector<RunRecord> sweep_omp(const ColonyConfig& base, const std::vector<std::uint64_t>& seeds,
                                 int max_threads) {
  const auto n = static_cast<std::ptrdiff_t>(seeds.size());
  std::vector<RunRecord> out(seeds.size());
  std::exception_ptr failure;
  const int threads = max_threads > 0 ? max_threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      ColonyConfig cfg = base;
      cfg.seed = seeds[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(i)] = run(cfg);
    } catch (...) {
#pragma omp critical(baga_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

OracleResult oracle_omp(const ProblemSpec& spec, int max_threads) {
  const auto space = enumerate_search_space(spec);
  const auto n = static_cast<std::ptrdiff_t>(space.size());
  std::vector<std::optional<Phenotype>> phenotypes(space.size());
  std::exception_ptr failure;
  const int threads = max_threads > 0 ? max_threads : omp_get_max_threads();

#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      phenotypes[static_cast<std::size_t>(i)] = express(space[static_cast<std::size_t>(i)], spec);
    } catch (...) {
#pragma omp critical(baga_oracle_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  // Reduction in enumeration order so ties keep the serial ordering.
  OracleResult result;
  const bool minimize = spec.direction == Direction::Minimize;
  double best = minimize ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < space.size(); ++i) {
    const Phenotype& ph = *phenotypes[i];
    if (ph.feasible) {
      const bool better = minimize ? ph.objective < best : ph.objective > best;
      if (better) {
        best = ph.objective;
        result.optimal.clear();
      }
      if (ph.objective == best) result.optimal.push_back(space[i]);
    }
    result.table.push_back({space[i], ph});
  }
  result.optimal_objective = best;
  return result;
}

}  // namespace baga::parallel
