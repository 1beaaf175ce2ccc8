#ifndef OFDMA_EXACT_HPP
#define OFDMA_EXACT_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ofdma/model.hpp"
#include "ofdma/power.hpp"

namespace ofdma {

/// One linear row: sum of coeff * variable  (sense)  rhs.
struct MilpRow {
  std::string name;
  std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
  char sense = '<';                           // '<' means <=, '>' means >=
  double rhs = 0.0;
};

/// The mixed-integer model: binary assignment variables x_{ijq} and
/// continuous powers p_{ijq}, the power-sum objective, and the linking,
/// interference, exclusivity, rate and lower-bound rows.
class MilpModel {
 public:
  MilpModel(const Instance& inst);

  int num_users() const { return num_users_; }
  int num_subcarriers() const { return num_subcarriers_; }
  const std::vector<int>& formats() const { return formats_; }
  int num_variables() const { return 2 * num_triples(); }
  int num_binaries() const { return num_triples(); }
  int num_triples() const {
    return num_users_ * num_subcarriers_ * static_cast<int>(formats_.size());
  }

  int x_index(int i, int j, int q_pos) const { return triple(i, j, q_pos); }
  int p_index(int i, int j, int q_pos) const {
    return num_triples() + triple(i, j, q_pos);
  }
  const std::string& variable_name(int v) const {
    return var_names_[static_cast<size_t>(v)];
  }
  /// Objective coefficient per variable (1 on powers, 0 on binaries).
  double objective_coeff(int v) const { return v >= num_triples() ? 1.0 : 0.0; }

  const std::vector<MilpRow>& rows() const { return rows_; }
  /// Power upper bound used as the big-M of the linking row for (i,j,q).
  double power_bound(int i, int j, int q_pos) const {
    return power_bound_[static_cast<size_t>(triple(i, j, q_pos))];
  }

 private:
  friend MilpModel build_milp(const Instance& inst);
  int triple(int i, int j, int q_pos) const {
    return (i * num_subcarriers_ + j) * static_cast<int>(formats_.size()) +
           q_pos;
  }

  int num_users_;
  int num_subcarriers_;
  std::vector<int> formats_;
  std::vector<std::string> var_names_;
  std::vector<MilpRow> rows_;
  std::vector<double> power_bound_;
};

/// Build the full model from an instance.  Big-M values are computed per
/// row from iterated power upper bounds rather than one global constant.
MilpModel build_milp(const Instance& inst);

/// Write the model in the standard LP text dialect (deterministic output).
void export_lp(const MilpModel& model, std::ostream& out);
std::string export_lp_string(const MilpModel& model);

struct ExactConfig {
  long long node_budget = 50'000'000;
};

struct ExactResult {
  enum class Status { Optimal, BudgetExhausted, Infeasible };
  Status status = Status::Infeasible;
  bool found = false;  // an allocation is available (always true if Optimal)
  Allocation allocation;
  PowerSolution power;
  long long nodes = 0;
};

/// Minimum-power allocation by implicit enumeration over (subcarrier, cell)
/// slots, pricing each completed subcarrier through the power kernel.
/// Exact on the instances it is meant for (roughly n*m <= 12, |Q| <= 2);
/// the node budget truncates larger searches, flagged in the result.
ExactResult solve_exact(const Instance& inst, const ExactConfig& config = {});

}  // namespace ofdma

#endif  // OFDMA_EXACT_HPP
