#ifndef OFDMA_REPAIR_HPP
#define OFDMA_REPAIR_HPP

#include <functional>
#include <vector>

#include "ofdma/model.hpp"

namespace ofdma {

/// Called once per removed (user, subcarrier) pair during peeling.
using RemovalHook = std::function<void(int user, int subcarrier)>;

/// Peel overloaded subcarriers until each one's power system is feasible
/// and, when `pmax_factor` > 0, its total power stays below
/// pmax_factor * (largest interference-free power among its occupants).
/// The victim of each removal is the user whose departure shrinks the
/// subcarrier total the most; ties go to the larger lambda (when given)
/// and then to the higher user index.  Subcarriers are scanned in
/// ascending index order.
void peel_subcarriers(const Instance& inst, Allocation& alloc,
                      double pmax_factor,
                      const std::vector<std::vector<double>>* lambda,
                      const RemovalHook& on_remove);

/// Greedily raise formats on the subcarriers each under-served user still
/// holds, cheapest marginal power increase first, re-checking subcarrier
/// feasibility after every raise, until the user's target is met or no
/// admissible raise remains.
void raise_formats_to_targets(const Instance& inst, Allocation& alloc,
                              const std::vector<int>& targets);

/// Power-reducing compaction: drop one of a user's subcarriers and absorb
/// its rate units into a higher format elsewhere whenever that strictly
/// lowers total power while keeping every touched subcarrier feasible.
/// Served rate never drops below min(current, target).  Returns true if
/// any move was applied.
bool compact_allocation(const Instance& inst, Allocation& alloc,
                        const std::vector<int>& targets);

}  // namespace ofdma

#endif  // OFDMA_REPAIR_HPP
