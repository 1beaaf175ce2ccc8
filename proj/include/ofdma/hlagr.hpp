#ifndef OFDMA_HLAGR_HPP
#define OFDMA_HLAGR_HPP

#include <vector>

#include "ofdma/model.hpp"
#include "ofdma/power.hpp"
#include "ofdma/report.hpp"

namespace ofdma {

struct HlagrConfig {
  int max_iters = 50;
  /// Multiplier applied to the lambda of every peeled (user, subcarrier).
  double beta = 1.25;
  /// A subcarrier is "too hot" when its total power exceeds this factor
  /// times the largest interference-free power among its occupants.
  double pmax_factor = 100.0;
};

struct LagrState {
  std::vector<std::vector<double>> lambda;  // [user][subcarrier], >= 1
  int iteration = 0;
  bool has_incumbent = false;
  Allocation incumbent;
  PowerSolution incumbent_power;
};

LagrState make_lagr_state(const Instance& inst);

/// Phase 1: one minimum-cost flow per cell at the base format, arc costs
/// lambda_ij * SIR * B*N0 / G_i(j), merged into a single allocation.
/// Throws std::runtime_error if any cell's flow problem is infeasible.
Allocation phase1_assign(const Instance& inst, const LagrState& state);

/// Phase 2: peel overloaded subcarriers (bumping each victim's lambda by
/// beta), then raise formats of under-served users until demands are met
/// where possible.  The result is power-feasible, possibly rate-short.
Allocation phase2_repair(const Instance& inst, Allocation alloc,
                         LagrState& state, const HlagrConfig& config);

struct HlagrResult {
  SolveReport report;
  Allocation allocation;
  LagrState state;
};

/// Full heuristic: iterate phase 1 -> phase 2, keeping the best allocation
/// under the (satisfied rate, -total power) order.  Stops early once an
/// iteration changes nothing (the loop has reached a fixed point).
HlagrResult run_hlagr(const Instance& inst, const HlagrConfig& config = {});

}  // namespace ofdma

#endif  // OFDMA_HLAGR_HPP
