#include "ofdma/hlagr.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "ofdma/flow.hpp"
#include "ofdma/repair.hpp"

namespace ofdma {

namespace {

/// Subcarriers a user needs at the base format to cover her demand.
int base_format_demand(const Instance& inst, int user) {
  const int q0 = inst.formats().min_format();
  return (inst.user(user).demand + q0 - 1) / q0;
}

}  // namespace

LagrState make_lagr_state(const Instance& inst) {
  LagrState state;
  state.lambda.assign(
      static_cast<size_t>(inst.num_users()),
      std::vector<double>(static_cast<size_t>(inst.num_subcarriers()), 1.0));
  return state;
}

Allocation phase1_assign(const Instance& inst, const LagrState& state) {
  const int q0 = inst.formats().min_format();
  const double sir = inst.formats().sir(q0);
  Allocation alloc(inst.num_users(), inst.num_subcarriers());

  for (int k = 0; k < inst.num_cells(); ++k) {
    const auto& members = inst.cell_members(k);
    if (members.empty()) continue;
    FlowProblem fp;
    fp.num_subcarriers = inst.num_subcarriers();
    for (int i : members) {
      fp.demands.push_back(base_format_demand(inst, i));
      std::vector<double> row(static_cast<size_t>(inst.num_subcarriers()));
      for (int j = 0; j < inst.num_subcarriers(); ++j) {
        row[static_cast<size_t>(j)] =
            state.lambda[static_cast<size_t>(i)][static_cast<size_t>(j)] *
            (sir * inst.noise_watt() / inst.gain(i, j));
      }
      fp.cost.push_back(std::move(row));
    }
    FlowSolution fs = solve_flow(fp);
    if (!fs.feasible) {
      throw std::runtime_error("phase1_assign: cell " + std::to_string(k) +
                               " flow problem infeasible");
    }
    for (size_t r = 0; r < members.size(); ++r) {
      for (int j = 0; j < inst.num_subcarriers(); ++j) {
        if (fs.assign[r][static_cast<size_t>(j)]) {
          alloc.assign(members[r], j, q0);
        }
      }
    }
  }
  return alloc;
}

Allocation phase2_repair(const Instance& inst, Allocation alloc,
                         LagrState& state, const HlagrConfig& config) {
  peel_subcarriers(inst, alloc, config.pmax_factor, &state.lambda,
                   [&](int user, int subcarrier) {
                     state.lambda[static_cast<size_t>(user)]
                                 [static_cast<size_t>(subcarrier)] *=
                         config.beta;
                   });
  std::vector<int> targets(static_cast<size_t>(inst.num_users()));
  for (int i = 0; i < inst.num_users(); ++i) {
    targets[static_cast<size_t>(i)] = inst.user(i).demand;
  }
  raise_formats_to_targets(inst, alloc, targets);
  return alloc;
}

HlagrResult run_hlagr(const Instance& inst, const HlagrConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  HlagrResult result;
  result.state = make_lagr_state(inst);
  LagrState& state = result.state;

  int satisfied_best = -1;
  double power_best = std::numeric_limits<double>::infinity();
  int iterations = 0;
  const int max_iters = std::max(1, config.max_iters);

  for (int it = 0; it < max_iters; ++it) {
    ++iterations;
    state.iteration = iterations;

    Allocation alloc = phase1_assign(inst, state);
    const auto lambda_before = state.lambda;
    alloc = phase2_repair(inst, alloc, state, config);
    PowerSolution ps = evaluate(inst, alloc);

    const int satisfied = satisfied_rate_units(inst, alloc);
    if (satisfied > satisfied_best ||
        (satisfied == satisfied_best && ps.total_power < power_best)) {
      satisfied_best = satisfied;
      power_best = ps.total_power;
      state.incumbent = alloc;
      state.incumbent_power = ps;
      state.has_incumbent = true;
    }
    if (state.lambda == lambda_before) {
      break;  // no repairs: every later iteration would repeat this one
    }
  }

  const auto t1 = std::chrono::steady_clock::now();
  result.allocation = state.incumbent;
  result.report.algorithm = "hlagr";
  result.report.total_power_watt = state.incumbent_power.total_power;
  result.report.rate_loss_pct = rate_loss_percent(inst, state.incumbent);
  result.report.iterations = iterations;
  result.report.feasible = state.incumbent_power.feasible;
  result.report.wall_time_s =
      std::chrono::duration<double>(t1 - t0).count();
  return result;
}

}  // namespace ofdma
