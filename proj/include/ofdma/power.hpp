#ifndef OFDMA_POWER_HPP
#define OFDMA_POWER_HPP

#include <utility>
#include <vector>

#include "ofdma/model.hpp"

namespace ofdma {

/// Co-channel users of one subcarrier (at most one per cell) with their
/// transmission formats.
struct SubcarrierLoad {
  int subcarrier = 0;
  std::vector<std::pair<int, int>> entries;  // (user index, format q)
};

struct PowerResult {
  bool feasible = false;
  std::vector<double> powers;  // Watt, aligned with load entries
};

/// Solve the coupled SIR power system for one subcarrier.
///
/// With a_ih = SIR(q_i) * G_i^{b(h)}(j) / G_i(j) and
/// b_i = SIR(q_i) * B*N0 / G_i(j), the equilibrium powers solve
/// (I - A) p = b.  The load is feasible iff that solve succeeds with a
/// componentwise nonnegative p, which is then the minimal nonnegative
/// solution.  A singular or negative solve yields an infeasible verdict,
/// never an exception.
PowerResult solve_powers(const Instance& inst, const SubcarrierLoad& load);

/// Collect the co-channel load of subcarrier j under an allocation.
SubcarrierLoad load_for_subcarrier(const Instance& inst,
                                   const Allocation& alloc, int j);

/// Price a whole allocation: solve every subcarrier's power system.
/// Any infeasible subcarrier marks the solution infeasible; total power
/// sums the feasible subcarriers.  Requires per-cell exclusivity.
PowerSolution evaluate(const Instance& inst, const Allocation& alloc);

}  // namespace ofdma

#endif  // OFDMA_POWER_HPP
