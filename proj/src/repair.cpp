#include "ofdma/repair.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ofdma/power.hpp"

namespace ofdma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double total_of(const PowerResult& r) {
  double t = 0.0;
  for (double p : r.powers) t += p;
  return t;
}

/// Total power of subcarrier j under alloc, or +inf when infeasible/empty==0.
double subcarrier_power(const Instance& inst, const Allocation& alloc, int j,
                        bool* feasible = nullptr) {
  SubcarrierLoad load = load_for_subcarrier(inst, alloc, j);
  if (load.entries.empty()) {
    if (feasible) *feasible = true;
    return 0.0;
  }
  PowerResult r = solve_powers(inst, load);
  if (feasible) *feasible = r.feasible;
  return r.feasible ? total_of(r) : kInf;
}

}  // namespace

void peel_subcarriers(const Instance& inst, Allocation& alloc,
                      double pmax_factor,
                      const std::vector<std::vector<double>>* lambda,
                      const RemovalHook& on_remove) {
  for (int j = 0; j < inst.num_subcarriers(); ++j) {
    while (true) {
      SubcarrierLoad load = load_for_subcarrier(inst, alloc, j);
      if (load.entries.size() <= 1) {
        break;  // a lone user is always feasible and within its own cap
      }
      PowerResult current = solve_powers(inst, load);
      bool overloaded = !current.feasible;
      if (!overloaded && pmax_factor > 0.0) {
        double cap = 0.0;
        for (const auto& [i, q] : load.entries) {
          cap = std::max(cap, interference_free_power(inst, i, j, q));
        }
        overloaded = total_of(current) > pmax_factor * cap;
      }
      if (!overloaded) break;

      // Victim = the user whose removal leaves the smallest residual power
      // (infeasible residuals rank last).
      int victim = -1;
      double victim_residual = kInf;
      double victim_lambda = -kInf;
      for (const auto& [i, q] : load.entries) {
        Allocation trial = alloc;
        trial.clear(i, j);
        bool ok = false;
        const double residual = subcarrier_power(inst, trial, j, &ok);
        const double res_key = ok ? residual : kInf;
        const double lam =
            lambda ? (*lambda)[static_cast<size_t>(i)][static_cast<size_t>(j)]
                   : 0.0;
        const bool better =
            res_key < victim_residual ||
            (res_key == victim_residual &&
             (lam > victim_lambda ||
              (lam == victim_lambda && i > victim)));
        if (better) {
          victim = i;
          victim_residual = res_key;
          victim_lambda = lam;
        }
      }
      alloc.clear(victim, j);
      if (on_remove) on_remove(victim, j);
    }
  }
}

void raise_formats_to_targets(const Instance& inst, Allocation& alloc,
                              const std::vector<int>& targets) {
  for (int i = 0; i < inst.num_users(); ++i) {
    while (served_rate_units(alloc, i) < targets[static_cast<size_t>(i)]) {
      int best_j = -1;
      int best_q = 0;
      double best_marginal = kInf;
      for (int j = 0; j < inst.num_subcarriers(); ++j) {
        const int q = alloc.format_at(i, j);
        if (q == 0) continue;
        const auto next = inst.formats().next_above(q);
        if (!next) continue;
        const double before = subcarrier_power(inst, alloc, j);
        Allocation trial = alloc;
        trial.assign(i, j, *next);
        bool ok = false;
        const double after = subcarrier_power(inst, trial, j, &ok);
        if (!ok) continue;
        const double marginal = after - before;
        if (marginal < best_marginal) {
          best_marginal = marginal;
          best_j = j;
          best_q = *next;
        }
      }
      if (best_j < 0) break;  // no admissible raise left
      alloc.assign(i, best_j, best_q);
    }
  }
}

bool compact_allocation(const Instance& inst, Allocation& alloc,
                        const std::vector<int>& targets) {
  bool any = false;
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i < inst.num_users(); ++i) {
      const int floor_units = std::min(served_rate_units(alloc, i),
                                       targets[static_cast<size_t>(i)]);
      for (int j_keep = 0; j_keep < inst.num_subcarriers(); ++j_keep) {
        const int q_keep = alloc.format_at(i, j_keep);
        if (q_keep == 0) continue;
        for (int j_drop = 0; j_drop < inst.num_subcarriers(); ++j_drop) {
          if (j_drop == j_keep) continue;
          const int q_drop = alloc.format_at(i, j_drop);
          if (q_drop == 0) continue;
          // Smallest format that absorbs the dropped units without losing
          // satisfied rate.
          const int served = served_rate_units(alloc, i);
          const int needed =
              q_keep + q_drop - std::max(0, served - floor_units);
          int q_new = 0;
          for (int q : inst.formats().values()) {
            if (q > q_keep && q >= needed) {
              q_new = q;
              break;
            }
          }
          if (q_new == 0) continue;

          const double before = subcarrier_power(inst, alloc, j_keep) +
                                subcarrier_power(inst, alloc, j_drop);
          Allocation trial = alloc;
          trial.assign(i, j_keep, q_new);
          trial.clear(i, j_drop);
          bool ok = false;
          const double after_keep =
              subcarrier_power(inst, trial, j_keep, &ok);
          if (!ok) continue;
          const double after = after_keep + subcarrier_power(inst, trial, j_drop);
          if (after < before - 1e-18) {
            alloc = trial;
            improved = true;
            any = true;
          }
        }
      }
    }
  }
  return any;
}

}  // namespace ofdma
