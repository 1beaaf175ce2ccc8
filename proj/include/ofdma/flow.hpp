#ifndef OFDMA_FLOW_HPP
#define OFDMA_FLOW_HPP

#include <cstdint>
#include <limits>
#include <vector>

namespace ofdma {

/// Cost sentinel marking an arc that must not be used.
inline constexpr double kForbiddenArc = std::numeric_limits<double>::infinity();

/// Single-cell transportation instance: each user demands an integral number
/// of unit-capacity subcarriers; cost[i][j] is the price of giving
/// subcarrier j to user i.
struct FlowProblem {
  std::vector<int> demands;
  int num_subcarriers = 0;
  std::vector<std::vector<double>> cost;  // [user][subcarrier]
  /// When set, demand that cannot be met (or is cheaper to drop) is routed
  /// to an overflow sink at `shortfall_penalty` per unit instead of making
  /// the problem infeasible.
  bool allow_shortfall = false;
  double shortfall_penalty = 0.0;
};

struct FlowSolution {
  bool feasible = false;
  std::vector<std::vector<uint8_t>> assign;  // x[i][j] in {0,1}
  double objective = 0.0;                    // sum of cost over assigned arcs
  std::vector<int> shortfall;                // unmet units per user
  // Final node potentials, for optimality-certificate checks.
  std::vector<double> user_potential;
  std::vector<double> subcarrier_potential;
};

/// Exact minimum-cost solution by successive shortest augmenting paths with
/// node potentials (Dijkstra inner loop).  Deterministic: among equal-cost
/// paths the one through lower-indexed nodes wins, so ties fall to the
/// lowest subcarrier index.
FlowSolution solve_flow(const FlowProblem& problem);

}  // namespace ofdma

#endif  // OFDMA_FLOW_HPP
