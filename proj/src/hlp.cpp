#include "ofdma/hlp.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "ofdma/flow.hpp"
#include "ofdma/repair.hpp"

namespace ofdma {

namespace {

/// Rebuild per-assignment transmit powers and the interference map from a
/// fresh allocation.  Where a subcarrier's power system is feasible the
/// equilibrium powers are used; where it is not, each base station falls
/// back to the power suggested by the interference its user measured last
/// round (the system has no equilibrium to settle into yet).
void refresh_interference(const Instance& inst, HlpState& state) {
  const int q0 = inst.formats().min_format();
  const double sir = inst.formats().sir(q0);
  const int n = inst.num_users();
  const int m = inst.num_subcarriers();

  std::vector<std::vector<double>> power(
      static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(m), 0.0));
  for (int j = 0; j < m; ++j) {
    SubcarrierLoad load = load_for_subcarrier(inst, state.alloc, j);
    if (load.entries.empty()) continue;
    PowerResult r = solve_powers(inst, load);
    for (size_t e = 0; e < load.entries.size(); ++e) {
      const int i = load.entries[e].first;
      power[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          r.feasible
              ? r.powers[e]
              : sir *
                    (inst.noise_watt() +
                     state.interference[static_cast<size_t>(i)]
                                       [static_cast<size_t>(j)]) /
                    inst.gain(i, j);
    }
  }

  std::vector<std::vector<double>> interference(
      static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(m), 0.0));
  for (int j = 0; j < m; ++j) {
    for (int u = 0; u < n; ++u) {
      double acc = 0.0;
      for (int h = 0; h < n; ++h) {
        if (inst.user(h).cell == inst.user(u).cell) continue;
        const double p = power[static_cast<size_t>(h)][static_cast<size_t>(j)];
        if (p > 0.0) {
          acc += inst.cross_gain(u, inst.user(h).cell, j) * p;
        }
      }
      interference[static_cast<size_t>(u)][static_cast<size_t>(j)] = acc;
    }
  }

  state.power = std::move(power);
  state.interference = std::move(interference);
}

}  // namespace

HlpState make_hlp_state(const Instance& inst) {
  HlpState state;
  state.alloc = Allocation(inst.num_users(), inst.num_subcarriers());
  state.interference.assign(
      static_cast<size_t>(inst.num_users()),
      std::vector<double>(static_cast<size_t>(inst.num_subcarriers()), 0.0));
  state.power = state.interference;
  state.effective_demand.resize(static_cast<size_t>(inst.num_users()));
  for (int i = 0; i < inst.num_users(); ++i) {
    state.effective_demand[static_cast<size_t>(i)] = inst.user(i).demand;
  }
  return state;
}

bool hlp_round(const Instance& inst, HlpState& state) {
  const int q0 = inst.formats().min_format();
  const double sir = inst.formats().sir(q0);
  const int m = inst.num_subcarriers();

  Allocation next(inst.num_users(), m);
  for (int k = 0; k < inst.num_cells(); ++k) {
    const auto& members = inst.cell_members(k);
    if (members.empty()) continue;
    FlowProblem fp;
    fp.num_subcarriers = m;
    for (int i : members) {
      const int target = state.effective_demand[static_cast<size_t>(i)];
      fp.demands.push_back((target + q0 - 1) / q0);
      std::vector<double> row(static_cast<size_t>(m));
      for (int j = 0; j < m; ++j) {
        row[static_cast<size_t>(j)] =
            sir *
            (inst.noise_watt() +
             state.interference[static_cast<size_t>(i)][static_cast<size_t>(j)]) /
            inst.gain(i, j);
      }
      fp.cost.push_back(std::move(row));
    }
    FlowSolution fs = solve_flow(fp);
    // Demands never exceed one subcarrier each and all arcs exist, so the
    // per-cell solve cannot fail; guard anyway to keep the round total.
    if (!fs.feasible) continue;
    for (size_t r = 0; r < members.size(); ++r) {
      for (int j = 0; j < m; ++j) {
        if (fs.assign[r][static_cast<size_t>(j)]) {
          next.assign(members[r], j, q0);
        }
      }
    }
  }

  const bool changed = !(next == state.alloc);
  state.alloc = std::move(next);
  refresh_interference(inst, state);
  ++state.round;
  return changed;
}

HlpResult run_hlp(const Instance& inst, const HlpConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  HlpResult result;
  result.state = make_hlp_state(inst);
  HlpState& state = result.state;

  const int max_rounds = std::max(1, config.max_rounds);
  const int stall = std::max(1, config.stall_rounds);
  bool steady = false;
  while (state.round < max_rounds) {
    const bool changed = hlp_round(inst, state);
    if (!changed) {
      steady = true;
      break;
    }
    if (state.round % stall == 0) {
      // Still thrashing: shed load.  The user paying the most for a single
      // assignment gives up reduction_step rate units.
      int worst_user = -1;
      double worst_power = -1.0;
      for (int i = 0; i < inst.num_users(); ++i) {
        for (int j = 0; j < inst.num_subcarriers(); ++j) {
          const double p =
              state.power[static_cast<size_t>(i)][static_cast<size_t>(j)];
          if (state.alloc.assigned(i, j) && p > worst_power &&
              state.effective_demand[static_cast<size_t>(i)] > 0) {
            worst_power = p;
            worst_user = i;
          }
        }
      }
      if (worst_user >= 0) {
        auto& demand = state.effective_demand[static_cast<size_t>(worst_user)];
        demand = std::max(0, demand - config.reduction_step);
      }
    }
  }
  (void)steady;

  // Final repair: enforce power feasibility, then claw rate back toward the
  // original demands and compact where that saves power.
  Allocation alloc = state.alloc;
  peel_subcarriers(inst, alloc, /*pmax_factor=*/0.0, nullptr, nullptr);
  std::vector<int> targets(static_cast<size_t>(inst.num_users()));
  for (int i = 0; i < inst.num_users(); ++i) {
    targets[static_cast<size_t>(i)] = inst.user(i).demand;
  }
  raise_formats_to_targets(inst, alloc, targets);
  compact_allocation(inst, alloc, targets);
  PowerSolution ps = evaluate(inst, alloc);

  const auto t1 = std::chrono::steady_clock::now();
  result.allocation = alloc;
  result.report.algorithm = "hlp";
  result.report.total_power_watt = ps.total_power;
  result.report.rate_loss_pct = rate_loss_percent(inst, alloc);
  result.report.iterations = state.round;
  result.report.feasible = ps.feasible;
  result.report.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
  return result;
}

}  // namespace ofdma
