#include "ofdma/power.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace ofdma {

namespace {
constexpr double kNegativePowerTol = 1e-12;
constexpr double kRelativeResidualTol = 1e-9;
}  // namespace

PowerResult solve_powers(const Instance& inst, const SubcarrierLoad& load) {
  const int n = static_cast<int>(load.entries.size());
  if (n == 0) throw std::invalid_argument("solve_powers: empty load");
  {
    std::vector<char> used(static_cast<size_t>(inst.num_cells()), 0);
    for (const auto& [user, q] : load.entries) {
      const int cell = inst.user(user).cell;
      if (used[static_cast<size_t>(cell)]) {
        throw std::invalid_argument(
            "solve_powers: two load users share a cell");
      }
      used[static_cast<size_t>(cell)] = 1;
      if (!inst.formats().contains(q)) {
        throw std::invalid_argument("solve_powers: format not in format set");
      }
    }
  }

  const int j = load.subcarrier;
  Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd rhs(n);
  for (int r = 0; r < n; ++r) {
    const auto [ui, qi] = load.entries[static_cast<size_t>(r)];
    const double sir = inst.formats().sir(qi);
    const double own = inst.gain(ui, j);
    rhs(r) = sir * inst.noise_watt() / own;
    for (int c = 0; c < n; ++c) {
      if (c == r) continue;
      const auto [uh, qh] = load.entries[static_cast<size_t>(c)];
      (void)qh;
      lhs(r, c) = -sir * inst.cross_gain(ui, inst.user(uh).cell, j) / own;
    }
  }

  Eigen::VectorXd p = lhs.partialPivLu().solve(rhs);

  PowerResult result;
  if (!p.allFinite()) return result;
  const double residual = (lhs * p - rhs).cwiseAbs().maxCoeff();
  if (residual > kRelativeResidualTol * rhs.cwiseAbs().maxCoeff()) {
    return result;
  }
  if ((p.array() < -kNegativePowerTol).any()) return result;

  result.feasible = true;
  result.powers.resize(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) {
    result.powers[static_cast<size_t>(r)] = std::max(p(r), 0.0);
  }
  return result;
}

SubcarrierLoad load_for_subcarrier(const Instance& inst,
                                   const Allocation& alloc, int j) {
  SubcarrierLoad load;
  load.subcarrier = j;
  for (int i = 0; i < inst.num_users(); ++i) {
    const int q = alloc.format_at(i, j);
    if (q != 0) load.entries.emplace_back(i, q);
  }
  return load;
}

PowerSolution evaluate(const Instance& inst, const Allocation& alloc) {
  if (alloc.num_users() != inst.num_users() ||
      alloc.num_subcarriers() != inst.num_subcarriers()) {
    throw std::invalid_argument("evaluate: allocation shape mismatch");
  }
  PowerSolution sol;
  sol.power.assign(static_cast<size_t>(inst.num_users()),
                   std::vector<double>(
                       static_cast<size_t>(inst.num_subcarriers()), 0.0));
  sol.subcarrier_feasible.assign(
      static_cast<size_t>(inst.num_subcarriers()), 1);

  for (int j = 0; j < inst.num_subcarriers(); ++j) {
    SubcarrierLoad load = load_for_subcarrier(inst, alloc, j);
    if (load.entries.empty()) continue;
    PowerResult r = solve_powers(inst, load);
    if (!r.feasible) {
      sol.subcarrier_feasible[static_cast<size_t>(j)] = 0;
      sol.feasible = false;
      continue;
    }
    for (size_t e = 0; e < load.entries.size(); ++e) {
      const int i = load.entries[e].first;
      sol.power[static_cast<size_t>(i)][static_cast<size_t>(j)] = r.powers[e];
      sol.total_power += r.powers[e];
    }
  }
  return sol;
}

}  // namespace ofdma
