#ifndef OFDMA_MODEL_HPP
#define OFDMA_MODEL_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ofdma {

/// Set of transmission formats available to every user.
///
/// A format q carries q * eta0 bit/s/Hz and needs a post-detection SIR of
/// 2^(q*eta0) - 1 on its subcarrier.  Formats are kept strictly increasing.
class FormatSet {
 public:
  FormatSet(double eta0, std::vector<int> formats);

  double eta0() const { return eta0_; }
  const std::vector<int>& values() const { return formats_; }
  int min_format() const { return formats_.front(); }
  int max_format() const { return formats_.back(); }
  bool contains(int q) const;
  /// Smallest format strictly greater than q, if any.
  std::optional<int> next_above(int q) const;
  /// Target SIR (linear) for format q.
  double sir(int q) const;

 private:
  double eta0_;
  std::vector<int> formats_;
};

/// SIR (linear ratio) required to sustain spectral efficiency q * eta0.
inline double sir_of_format(int q, double eta0) {
  return std::exp2(static_cast<double>(q) * eta0) - 1.0;
}

struct User {
  int id = 0;      // external identifier (JSON)
  int cell = 0;    // 0-based cell index
  int demand = 0;  // required rate units r_i
};

/// Immutable problem data: cells, users, subcarriers, formats and all
/// channel gains in linear units.
class Instance {
 public:
  Instance(int num_cells, int num_subcarriers, double bandwidth_hz,
           double noise_watt, FormatSet formats, std::vector<User> users,
           std::vector<std::vector<double>> gain,
           std::vector<std::vector<std::vector<double>>> cross_gain);

  int num_cells() const { return num_cells_; }
  int num_subcarriers() const { return num_subcarriers_; }
  int num_users() const { return static_cast<int>(users_.size()); }
  double bandwidth_hz() const { return bandwidth_hz_; }
  double noise_watt() const { return noise_watt_; }
  const FormatSet& formats() const { return formats_; }
  const std::vector<User>& users() const { return users_; }
  const User& user(int i) const { return users_[static_cast<size_t>(i)]; }

  /// Own-cell channel gain G_i(j).
  double gain(int i, int j) const {
    return gain_[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  /// Gain between user i and the base station of a foreign cell on j.
  double cross_gain(int i, int cell, int j) const {
    return cross_gain_[static_cast<size_t>(i)][static_cast<size_t>(cell)]
                      [static_cast<size_t>(j)];
  }
  /// Unified gain between user i and the base station of `cell` on j,
  /// own-cell or cross-cell.
  double gain_to(int i, int cell, int j) const {
    return cell == users_[static_cast<size_t>(i)].cell ? gain(i, j)
                                                       : cross_gain(i, cell, j);
  }

  const std::vector<int>& cell_members(int cell) const {
    return cell_members_[static_cast<size_t>(cell)];
  }
  int cell_demand(int cell) const {
    return cell_demand_[static_cast<size_t>(cell)];
  }
  int total_demand() const { return total_demand_; }

 private:
  int num_cells_;
  int num_subcarriers_;
  double bandwidth_hz_;
  double noise_watt_;
  FormatSet formats_;
  std::vector<User> users_;
  std::vector<std::vector<double>> gain_;
  std::vector<std::vector<std::vector<double>>> cross_gain_;
  std::vector<std::vector<int>> cell_members_;
  std::vector<int> cell_demand_;
  int total_demand_;
};

/// Power a lone user needs on subcarrier j with format q (no interference).
inline double interference_free_power(const Instance& inst, int i, int j,
                                      int q) {
  return inst.formats().sir(q) * inst.noise_watt() / inst.gain(i, j);
}

/// The allocation decision: an optional format per (user, subcarrier).
/// 0 means "not assigned".
class Allocation {
 public:
  Allocation() = default;
  Allocation(int num_users, int num_subcarriers)
      : num_subcarriers_(num_subcarriers),
        cells_(static_cast<size_t>(num_users) *
                   static_cast<size_t>(num_subcarriers),
               0) {}

  int num_users() const {
    return num_subcarriers_ == 0
               ? 0
               : static_cast<int>(cells_.size()) / num_subcarriers_;
  }
  int num_subcarriers() const { return num_subcarriers_; }

  int format_at(int i, int j) const { return cells_[index(i, j)]; }
  bool assigned(int i, int j) const { return cells_[index(i, j)] != 0; }
  void assign(int i, int j, int q) { cells_[index(i, j)] = q; }
  void clear(int i, int j) { cells_[index(i, j)] = 0; }

  bool operator==(const Allocation&) const = default;

 private:
  size_t index(int i, int j) const {
    return static_cast<size_t>(i) * static_cast<size_t>(num_subcarriers_) +
           static_cast<size_t>(j);
  }
  int num_subcarriers_ = 0;
  std::vector<int> cells_;
};

/// Rate units actually granted to a user: sum of assigned format multipliers.
int served_rate_units(const Allocation& alloc, int user);

/// Sum over users of min(served, demand); overshoot does not count.
int satisfied_rate_units(const Instance& inst, const Allocation& alloc);

/// Percentage of demanded rate units left unserved (0 when total demand is 0).
double rate_loss_percent(const Instance& inst, const Allocation& alloc);

/// Transmit powers realizing an allocation, with per-subcarrier verdicts.
struct PowerSolution {
  std::vector<std::vector<double>> power;    // [user][subcarrier], 0 if unused
  std::vector<uint8_t> subcarrier_feasible;  // per subcarrier
  bool feasible = true;                      // all subcarriers feasible
  double total_power = 0.0;                  // Watt, over feasible subcarriers
};

enum class ViolationKind { RateShortfall, CellExclusivity, PowerInfeasible };

struct Violation {
  ViolationKind kind;
  int user = -1;
  int subcarrier = -1;
  int cell = -1;
  std::string message;
};

/// Check the three feasibility conditions: every demand met, per-cell
/// exclusivity on each subcarrier, and a solvable power system per
/// subcarrier.  Empty result means the allocation is feasible.
/// Throws std::invalid_argument on malformed input (dimension mismatch or a
/// format outside the instance's format set).
std::vector<Violation> validate_allocation(const Instance& inst,
                                           const Allocation& alloc);

}  // namespace ofdma

#endif  // OFDMA_MODEL_HPP
