#ifndef OFDMA_BENCH_HPP
#define OFDMA_BENCH_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "ofdma/exact.hpp"
#include "ofdma/hlagr.hpp"
#include "ofdma/hlp.hpp"
#include "ofdma/scenario.hpp"

namespace ofdma {

/// Ensemble benchmark: for every users-per-cell class, generate seeded
/// instances and run the requested algorithms on each.
struct BenchConfig {
  ScenarioConfig scenario;                     // template; n_k and seed vary
  std::vector<int> users_per_cell = {2, 4, 8};
  int instances_per_class = 10;
  std::vector<std::string> algorithms = {"hlp", "hlagr"};  // also "exact"
  HlagrConfig hlagr;
  HlpConfig hlp;
  ExactConfig exact;
};

/// Seed of instance `index` within the class with n_k users per cell.
std::uint64_t bench_seed(std::uint64_t base_seed, int users_per_cell,
                         int index);

/// Write the CSV: header, one row per (instance, algorithm), then one
/// average row per (n_k, algorithm) after each class.  With fixed seeds the
/// output is identical across runs except for the time_s column.  A solver
/// failure becomes a row with empty metric fields; the run continues.
void run_bench(const BenchConfig& config, std::ostream& out);

}  // namespace ofdma

#endif  // OFDMA_BENCH_HPP
