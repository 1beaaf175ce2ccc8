#ifndef OFDMA_REPORT_HPP
#define OFDMA_REPORT_HPP

#include <cstdint>
#include <string>

namespace ofdma {

/// Outcome summary shared by every solver and the benchmark harness.
struct SolveReport {
  std::string algorithm;
  double total_power_watt = 0.0;
  double rate_loss_pct = 0.0;
  double wall_time_s = 0.0;
  long long iterations = 0;  // iterations, rounds or search nodes
  bool feasible = true;      // power-feasible up to the reported rate loss
  std::string instance_id;
  std::uint64_t seed = 0;
};

}  // namespace ofdma

#endif  // OFDMA_REPORT_HPP
