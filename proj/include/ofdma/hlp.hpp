#ifndef OFDMA_HLP_HPP
#define OFDMA_HLP_HPP

#include <vector>

#include "ofdma/model.hpp"
#include "ofdma/power.hpp"
#include "ofdma/report.hpp"

namespace ofdma {

struct HlpConfig {
  int max_rounds = 100;
  /// After this many rounds without a steady state, one rate unit is taken
  /// from the user holding the costliest assignment.
  int stall_rounds = 10;
  int reduction_step = 1;
};

struct HlpState {
  Allocation alloc;
  /// Interference each user would measure on each subcarrier (Watt),
  /// given the other cells' transmissions of the previous round.
  std::vector<std::vector<double>> interference;
  /// Transmit power behind each assignment of the current allocation.
  std::vector<std::vector<double>> power;
  std::vector<int> effective_demand;  // r-hat, never above the true demand
  int round = 0;
};

HlpState make_hlp_state(const Instance& inst);

/// One synchronous round: every cell re-solves its own flow problem at the
/// base format against the interference measured last round, then the
/// interference map is rebuilt from the merged new allocation.  Returns
/// whether any cell changed its assignment.
bool hlp_round(const Instance& inst, HlpState& state);

struct HlpResult {
  SolveReport report;
  Allocation allocation;
  HlpState state;
};

/// Decentralized heuristic: iterate hlp_round until a steady state or the
/// round budget, progressively reducing effective demands on stalls; the
/// final allocation is peeled to power feasibility, format-raised back
/// toward the original demands and compacted where that saves power.
HlpResult run_hlp(const Instance& inst, const HlpConfig& config = {});

}  // namespace ofdma

#endif  // OFDMA_HLP_HPP
