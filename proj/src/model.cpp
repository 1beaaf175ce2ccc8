#include "ofdma/model.hpp"

#include <algorithm>
#include <stdexcept>

#include "ofdma/power.hpp"

namespace ofdma {

FormatSet::FormatSet(double eta0, std::vector<int> formats)
    : eta0_(eta0), formats_(std::move(formats)) {
  if (!(eta0_ > 0.0)) {
    throw std::invalid_argument("FormatSet: eta0 must be positive");
  }
  if (formats_.empty()) {
    throw std::invalid_argument("FormatSet: at least one format required");
  }
  int prev = 0;
  for (int q : formats_) {
    if (q < 1) throw std::invalid_argument("FormatSet: formats must be >= 1");
    if (q <= prev) {
      throw std::invalid_argument("FormatSet: formats must strictly increase");
    }
    prev = q;
  }
}

bool FormatSet::contains(int q) const {
  return std::binary_search(formats_.begin(), formats_.end(), q);
}

std::optional<int> FormatSet::next_above(int q) const {
  auto it = std::upper_bound(formats_.begin(), formats_.end(), q);
  if (it == formats_.end()) return std::nullopt;
  return *it;
}

double FormatSet::sir(int q) const { return sir_of_format(q, eta0_); }

Instance::Instance(int num_cells, int num_subcarriers, double bandwidth_hz,
                   double noise_watt, FormatSet formats,
                   std::vector<User> users,
                   std::vector<std::vector<double>> gain,
                   std::vector<std::vector<std::vector<double>>> cross_gain)
    : num_cells_(num_cells),
      num_subcarriers_(num_subcarriers),
      bandwidth_hz_(bandwidth_hz),
      noise_watt_(noise_watt),
      formats_(std::move(formats)),
      users_(std::move(users)),
      gain_(std::move(gain)),
      cross_gain_(std::move(cross_gain)) {
  if (num_cells_ < 1) throw std::invalid_argument("Instance: need >= 1 cell");
  if (num_subcarriers_ < 1) {
    throw std::invalid_argument("Instance: need >= 1 subcarrier");
  }
  if (!(bandwidth_hz_ > 0.0) || !(noise_watt_ > 0.0)) {
    throw std::invalid_argument("Instance: bandwidth and noise must be > 0");
  }
  const size_t n = users_.size();
  if (gain_.size() != n || cross_gain_.size() != n) {
    throw std::invalid_argument("Instance: gain tables must have one row per user");
  }
  cell_members_.assign(static_cast<size_t>(num_cells_), {});
  cell_demand_.assign(static_cast<size_t>(num_cells_), 0);
  total_demand_ = 0;
  const size_t m = static_cast<size_t>(num_subcarriers_);
  for (size_t i = 0; i < n; ++i) {
    const User& u = users_[i];
    if (u.cell < 0 || u.cell >= num_cells_) {
      throw std::invalid_argument("Instance: user cell out of range");
    }
    if (u.demand < 0) {
      throw std::invalid_argument("Instance: user demand must be >= 0");
    }
    if (gain_[i].size() != m) {
      throw std::invalid_argument("Instance: gain row size mismatch");
    }
    for (double g : gain_[i]) {
      if (!(g > 0.0)) throw std::invalid_argument("Instance: gains must be > 0");
    }
    if (cross_gain_[i].size() != static_cast<size_t>(num_cells_)) {
      throw std::invalid_argument("Instance: cross_gain must cover every cell");
    }
    for (int k = 0; k < num_cells_; ++k) {
      auto& row = cross_gain_[i][static_cast<size_t>(k)];
      if (k == u.cell) {
        // Own-cell slot is unused; normalize to zeros for canonical storage.
        row.assign(m, 0.0);
        continue;
      }
      if (row.size() != m) {
        throw std::invalid_argument("Instance: cross_gain row size mismatch");
      }
      for (double g : row) {
        if (!(g > 0.0)) {
          throw std::invalid_argument("Instance: cross gains must be > 0");
        }
      }
    }
    cell_members_[static_cast<size_t>(u.cell)].push_back(static_cast<int>(i));
    cell_demand_[static_cast<size_t>(u.cell)] += u.demand;
    total_demand_ += u.demand;
  }
  for (int k = 0; k < num_cells_; ++k) {
    if (cell_demand_[static_cast<size_t>(k)] > num_subcarriers_) {
      throw std::invalid_argument(
          "Instance: per-cell demand exceeds subcarrier count");
    }
  }
}

int served_rate_units(const Allocation& alloc, int user) {
  int units = 0;
  for (int j = 0; j < alloc.num_subcarriers(); ++j) {
    units += alloc.format_at(user, j);
  }
  return units;
}

int satisfied_rate_units(const Instance& inst, const Allocation& alloc) {
  int total = 0;
  for (int i = 0; i < inst.num_users(); ++i) {
    total += std::min(served_rate_units(alloc, i), inst.user(i).demand);
  }
  return total;
}

double rate_loss_percent(const Instance& inst, const Allocation& alloc) {
  const int demanded = inst.total_demand();
  if (demanded == 0) return 0.0;
  const int satisfied = satisfied_rate_units(inst, alloc);
  return 100.0 * static_cast<double>(demanded - satisfied) /
         static_cast<double>(demanded);
}

std::vector<Violation> validate_allocation(const Instance& inst,
                                           const Allocation& alloc) {
  if (alloc.num_users() != inst.num_users() ||
      alloc.num_subcarriers() != inst.num_subcarriers()) {
    throw std::invalid_argument(
        "validate_allocation: allocation shape does not match instance");
  }
  for (int i = 0; i < inst.num_users(); ++i) {
    for (int j = 0; j < inst.num_subcarriers(); ++j) {
      const int q = alloc.format_at(i, j);
      if (q != 0 && !inst.formats().contains(q)) {
        throw std::invalid_argument(
            "validate_allocation: format outside the instance format set");
      }
    }
  }

  std::vector<Violation> out;
  for (int i = 0; i < inst.num_users(); ++i) {
    const int served = served_rate_units(alloc, i);
    if (served < inst.user(i).demand) {
      out.push_back({ViolationKind::RateShortfall, i, -1, inst.user(i).cell,
                     "user served " + std::to_string(served) + " of " +
                         std::to_string(inst.user(i).demand) + " rate units"});
    }
  }
  for (int j = 0; j < inst.num_subcarriers(); ++j) {
    std::vector<int> seen(static_cast<size_t>(inst.num_cells()), -1);
    for (int i = 0; i < inst.num_users(); ++i) {
      if (!alloc.assigned(i, j)) continue;
      const int k = inst.user(i).cell;
      if (seen[static_cast<size_t>(k)] >= 0) {
        out.push_back({ViolationKind::CellExclusivity, i, j, k,
                       "users " + std::to_string(seen[static_cast<size_t>(k)]) +
                           " and " + std::to_string(i) +
                           " of one cell share subcarrier " +
                           std::to_string(j)});
      } else {
        seen[static_cast<size_t>(k)] = i;
      }
    }
  }
  // Power feasibility is only meaningful on subcarriers without exclusivity
  // clashes; clashing subcarriers are already reported above.
  for (int j = 0; j < inst.num_subcarriers(); ++j) {
    bool clash = false;
    for (const Violation& v : out) {
      if (v.kind == ViolationKind::CellExclusivity && v.subcarrier == j) {
        clash = true;
        break;
      }
    }
    if (clash) continue;
    SubcarrierLoad load = load_for_subcarrier(inst, alloc, j);
    if (load.entries.empty()) continue;
    if (!solve_powers(inst, load).feasible) {
      out.push_back({ViolationKind::PowerInfeasible, -1, j, -1,
                     "power system on subcarrier " + std::to_string(j) +
                         " has no nonnegative solution"});
    }
  }
  return out;
}

}  // namespace ofdma
