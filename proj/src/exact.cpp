#include "ofdma/exact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace ofdma {

namespace {

constexpr double kPowerCap = 1e6;  // Watt; absolute cap on big-M bounds

std::string index_suffix(int i, int j, int q) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "_%d_%d_%d", i + 1, j + 1, q);
  return buf;
}

/// Iterated per-(user, subcarrier, format) power upper bounds.  Starting
/// from the cap and refining keeps every iterate above the true equilibrium
/// power, so the result is a valid (and much tighter) big-M.
std::vector<double> iterated_power_bounds(const Instance& inst) {
  const int n = inst.num_users();
  const int m = inst.num_subcarriers();
  const auto& formats = inst.formats().values();
  const int p = static_cast<int>(formats.size());
  auto idx = [&](int i, int j, int qp) { return (i * m + j) * p + qp; };

  std::vector<double> bound(static_cast<size_t>(n * m * p), kPowerCap);
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<double> next(bound.size());
    for (int j = 0; j < m; ++j) {
      // Worst-case transmit power per user on j under the current bounds.
      std::vector<double> user_max(static_cast<size_t>(n), 0.0);
      for (int h = 0; h < n; ++h) {
        for (int qp = 0; qp < p; ++qp) {
          user_max[static_cast<size_t>(h)] = std::max(
              user_max[static_cast<size_t>(h)], bound[static_cast<size_t>(idx(h, j, qp))]);
        }
      }
      for (int i = 0; i < n; ++i) {
        double interference = 0.0;
        for (int h = 0; h < n; ++h) {
          if (inst.user(h).cell == inst.user(i).cell) continue;
          interference += inst.cross_gain(i, inst.user(h).cell, j) *
                          user_max[static_cast<size_t>(h)];
        }
        for (int qp = 0; qp < p; ++qp) {
          const double sir = inst.formats().sir(formats[static_cast<size_t>(qp)]);
          const double value =
              sir * (inst.noise_watt() + interference) / inst.gain(i, j);
          next[static_cast<size_t>(idx(i, j, qp))] = std::min(kPowerCap, value);
        }
      }
    }
    bound = std::move(next);
  }
  return bound;
}

}  // namespace

MilpModel::MilpModel(const Instance& inst)
    : num_users_(inst.num_users()),
      num_subcarriers_(inst.num_subcarriers()),
      formats_(inst.formats().values()) {}

MilpModel build_milp(const Instance& inst) {
  MilpModel model(inst);
  const int n = model.num_users();
  const int m = model.num_subcarriers();
  const auto& formats = model.formats_;
  const int p = static_cast<int>(formats.size());

  model.var_names_.resize(static_cast<size_t>(model.num_variables()));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int qp = 0; qp < p; ++qp) {
        const int q = formats[static_cast<size_t>(qp)];
        model.var_names_[static_cast<size_t>(model.x_index(i, j, qp))] =
            "x" + index_suffix(i, j, q);
        model.var_names_[static_cast<size_t>(model.p_index(i, j, qp))] =
            "p" + index_suffix(i, j, q);
      }
    }
  }

  model.power_bound_ = iterated_power_bounds(inst);

  // Linking rows: p_ijq <= L * x_ijq.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int qp = 0; qp < p; ++qp) {
        MilpRow row;
        row.name = "link" + index_suffix(i, j, formats[static_cast<size_t>(qp)]);
        row.terms.emplace_back(model.p_index(i, j, qp), 1.0);
        row.terms.emplace_back(model.x_index(i, j, qp),
                               -model.power_bound(i, j, qp));
        row.sense = '<';
        row.rhs = 0.0;
        model.rows_.push_back(std::move(row));
      }
    }
  }

  // Interference rows, activated by x_ijq.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      // Largest interference user i can see on subcarrier j.
      double max_interference = 0.0;
      for (int h = 0; h < n; ++h) {
        if (inst.user(h).cell == inst.user(i).cell) continue;
        double worst = 0.0;
        for (int qp = 0; qp < p; ++qp) {
          worst = std::max(worst, model.power_bound(h, j, qp));
        }
        max_interference += inst.cross_gain(i, inst.user(h).cell, j) * worst;
      }
      const double big_l = 1.0 + max_interference / inst.noise_watt();
      for (int qp = 0; qp < p; ++qp) {
        const int q = formats[static_cast<size_t>(qp)];
        const double sir = inst.formats().sir(q);
        MilpRow row;
        row.name = "sir" + index_suffix(i, j, q);
        row.terms.emplace_back(model.p_index(i, j, qp), inst.gain(i, j));
        for (int h = 0; h < n; ++h) {
          if (inst.user(h).cell == inst.user(i).cell) continue;
          const double g = inst.cross_gain(i, inst.user(h).cell, j);
          for (int vp = 0; vp < p; ++vp) {
            row.terms.emplace_back(model.p_index(h, j, vp), -sir * g);
          }
        }
        row.terms.emplace_back(model.x_index(i, j, qp),
                               -sir * inst.noise_watt() * big_l);
        row.sense = '>';
        row.rhs = sir * inst.noise_watt() * (1.0 - big_l);
        model.rows_.push_back(std::move(row));
      }
    }
  }

  // Per-cell exclusivity on each subcarrier.
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < inst.num_cells(); ++k) {
      MilpRow row;
      char buf[48];
      std::snprintf(buf, sizeof(buf), "excl_%d_%d", j + 1, k + 1);
      row.name = buf;
      for (int i : inst.cell_members(k)) {
        for (int qp = 0; qp < p; ++qp) {
          row.terms.emplace_back(model.x_index(i, j, qp), 1.0);
        }
      }
      row.sense = '<';
      row.rhs = 1.0;
      model.rows_.push_back(std::move(row));
    }
  }

  // Rate rows, already divided by the base rate unit.
  for (int i = 0; i < n; ++i) {
    MilpRow row;
    row.name = "rate_" + std::to_string(i + 1);
    for (int j = 0; j < m; ++j) {
      for (int qp = 0; qp < p; ++qp) {
        row.terms.emplace_back(model.x_index(i, j, qp),
                               static_cast<double>(formats[static_cast<size_t>(qp)]));
      }
    }
    row.sense = '>';
    row.rhs = static_cast<double>(inst.user(i).demand);
    model.rows_.push_back(std::move(row));
  }

  // Redundant lower bounds that tighten the linear relaxation.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int qp = 0; qp < p; ++qp) {
        const int q = formats[static_cast<size_t>(qp)];
        MilpRow row;
        row.name = "lb" + index_suffix(i, j, q);
        row.terms.emplace_back(model.p_index(i, j, qp), 1.0);
        row.terms.emplace_back(model.x_index(i, j, qp),
                               -interference_free_power(inst, i, j, q));
        row.sense = '>';
        row.rhs = 0.0;
        model.rows_.push_back(std::move(row));
      }
    }
  }

  return model;
}

namespace {

std::string format_coeff(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

/// Append "± coeff name" to a row body, folding the sign into the operator.
void append_term(std::string& body, bool first, double coeff,
                 const std::string& name) {
  if (first) {
    if (coeff < 0.0) body += "- ";
  } else {
    body += coeff < 0.0 ? " - " : " + ";
  }
  const double mag = std::fabs(coeff);
  if (mag != 1.0) {
    body += format_coeff(mag);
    body += ' ';
  }
  body += name;
}

void write_wrapped(std::ostream& out, const std::string& line) {
  constexpr size_t kMaxWidth = 220;
  size_t pos = 0;
  while (line.size() - pos > kMaxWidth) {
    const size_t cut = line.rfind(' ', pos + kMaxWidth);
    if (cut == std::string::npos || cut <= pos) break;
    out.write(line.data() + pos, static_cast<std::streamsize>(cut - pos));
    out << "\n ";
    pos = cut + 1;
  }
  out.write(line.data() + pos, static_cast<std::streamsize>(line.size() - pos));
  out << '\n';
}

}  // namespace

void export_lp(const MilpModel& model, std::ostream& out) {
  out << "\\ OFDMA subcarrier/format assignment, power minimization\n";
  out << "Minimize\n";
  {
    std::string body = " obj: ";
    bool first = true;
    for (int v = 0; v < model.num_variables(); ++v) {
      if (model.objective_coeff(v) == 0.0) continue;
      append_term(body, first, model.objective_coeff(v),
                  model.variable_name(v));
      first = false;
    }
    write_wrapped(out, body);
  }
  out << "Subject To\n";
  for (const MilpRow& row : model.rows()) {
    if (row.terms.empty()) continue;  // a cell with no users has a void row
    std::string body = " " + row.name + ": ";
    bool first = true;
    for (const auto& [v, coeff] : row.terms) {
      append_term(body, first, coeff, model.variable_name(v));
      first = false;
    }
    body += row.sense == '<' ? " <= " : (row.sense == '>' ? " >= " : " = ");
    body += format_coeff(row.rhs);
    write_wrapped(out, body);
  }
  out << "Bounds\n";
  for (int v = model.num_binaries(); v < model.num_variables(); ++v) {
    out << " 0 <= " << model.variable_name(v) << "\n";
  }
  out << "Binary\n";
  for (int v = 0; v < model.num_binaries(); ++v) {
    out << " " << model.variable_name(v) << "\n";
  }
  out << "End\n";
}

std::string export_lp_string(const MilpModel& model) {
  std::ostringstream oss;
  export_lp(model, oss);
  return oss.str();
}

namespace {

struct SearchContext {
  const Instance& inst;
  long long budget;
  long long nodes = 0;
  bool truncated = false;
  Allocation current;
  std::vector<int> served;
  Allocation best;
  double best_power = std::numeric_limits<double>::infinity();
  bool found = false;
};

/// Remaining demand of every cell must fit in its remaining subcarrier
/// slots at the largest format.
bool capacity_ok(const SearchContext& ctx, int subcarriers_left) {
  const int q_max = ctx.inst.formats().max_format();
  for (int k = 0; k < ctx.inst.num_cells(); ++k) {
    int remaining = 0;
    for (int i : ctx.inst.cell_members(k)) {
      remaining += std::max(0, ctx.inst.user(i).demand -
                                   ctx.served[static_cast<size_t>(i)]);
    }
    if (remaining > subcarriers_left * q_max) return false;
  }
  return true;
}

void search_slot(SearchContext& ctx, int j, int k, double partial_power);

void enter_subcarrier(SearchContext& ctx, int j, double partial_power) {
  const int m = ctx.inst.num_subcarriers();
  if (j == m) {
    for (int i = 0; i < ctx.inst.num_users(); ++i) {
      if (ctx.served[static_cast<size_t>(i)] < ctx.inst.user(i).demand) return;
    }
    if (partial_power < ctx.best_power) {
      ctx.best_power = partial_power;
      ctx.best = ctx.current;
      ctx.found = true;
    }
    return;
  }
  if (!capacity_ok(ctx, m - j)) return;
  search_slot(ctx, j, 0, partial_power);
}

void close_subcarrier(SearchContext& ctx, int j, double partial_power) {
  SubcarrierLoad load = load_for_subcarrier(ctx.inst, ctx.current, j);
  double subcarrier_power = 0.0;
  if (!load.entries.empty()) {
    PowerResult r = solve_powers(ctx.inst, load);
    if (!r.feasible) return;
    for (double pw : r.powers) subcarrier_power += pw;
  }
  const double total = partial_power + subcarrier_power;
  if (total >= ctx.best_power) return;
  enter_subcarrier(ctx, j + 1, total);
}

void search_slot(SearchContext& ctx, int j, int k, double partial_power) {
  if (ctx.truncated) return;
  if (k == ctx.inst.num_cells()) {
    close_subcarrier(ctx, j, partial_power);
    return;
  }
  if (++ctx.nodes > ctx.budget) {
    ctx.truncated = true;
    return;
  }
  // Leave the slot empty.
  search_slot(ctx, j, k + 1, partial_power);
  // Or give it to one user of the cell, with each format.
  for (int i : ctx.inst.cell_members(k)) {
    if (ctx.served[static_cast<size_t>(i)] >= ctx.inst.user(i).demand) {
      continue;  // extra assignments only ever add power
    }
    for (int q : ctx.inst.formats().values()) {
      ctx.current.assign(i, j, q);
      ctx.served[static_cast<size_t>(i)] += q;
      search_slot(ctx, j, k + 1, partial_power);
      ctx.served[static_cast<size_t>(i)] -= q;
      ctx.current.clear(i, j);
      if (ctx.truncated) return;
    }
  }
}

}  // namespace

ExactResult solve_exact(const Instance& inst, const ExactConfig& config) {
  SearchContext ctx{inst, config.node_budget};
  ctx.current = Allocation(inst.num_users(), inst.num_subcarriers());
  ctx.served.assign(static_cast<size_t>(inst.num_users()), 0);

  enter_subcarrier(ctx, 0, 0.0);

  ExactResult result;
  result.nodes = ctx.nodes;
  result.found = ctx.found;
  if (ctx.truncated) {
    result.status = ExactResult::Status::BudgetExhausted;
  } else if (ctx.found) {
    result.status = ExactResult::Status::Optimal;
  } else {
    result.status = ExactResult::Status::Infeasible;
  }
  if (ctx.found) {
    result.allocation = ctx.best;
    result.power = evaluate(inst, ctx.best);
  }
  return result;
}

}  // namespace ofdma
