#include "ofdma/bench.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace ofdma {

namespace {

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

struct RowStats {
  int count = 0;
  double power = 0.0, loss = 0.0, time = 0.0;
  long long iters = 0;
};

SolveReport run_algorithm(const std::string& algo, const Instance& inst,
                          const BenchConfig& config) {
  if (algo == "hlagr") return run_hlagr(inst, config.hlagr).report;
  if (algo == "hlp") return run_hlp(inst, config.hlp).report;
  if (algo == "exact") {
    const auto t0 = std::chrono::steady_clock::now();
    ExactResult r = solve_exact(inst, config.exact);
    const auto t1 = std::chrono::steady_clock::now();
    if (!r.found) throw std::runtime_error("exact: no feasible allocation");
    SolveReport rep;
    rep.algorithm = "exact";
    rep.total_power_watt = r.power.total_power;
    rep.rate_loss_pct = 0.0;
    rep.iterations = r.nodes;
    rep.feasible = r.power.feasible;
    rep.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
    return rep;
  }
  throw std::invalid_argument("unknown algorithm: " + algo);
}

}  // namespace

std::uint64_t bench_seed(std::uint64_t base_seed, int users_per_cell,
                         int index) {
  return base_seed + 1000ull * static_cast<std::uint64_t>(users_per_cell) +
         static_cast<std::uint64_t>(index);
}

void run_bench(const BenchConfig& config, std::ostream& out) {
  out << "instance_id,seed,n_k,algo,power_watt,rate_loss_pct,time_s,iters\n";
  for (int nk : config.users_per_cell) {
    std::vector<RowStats> stats(config.algorithms.size());
    for (int idx = 0; idx < config.instances_per_class; ++idx) {
      ScenarioConfig sc = config.scenario;
      sc.users_per_cell = nk;
      sc.seed = bench_seed(config.scenario.seed, nk, idx);
      char id[48];
      std::snprintf(id, sizeof(id), "nk%d_i%02d", nk, idx);
      const Instance inst = generate(sc);
      for (size_t a = 0; a < config.algorithms.size(); ++a) {
        const std::string& algo = config.algorithms[a];
        out << id << ',' << sc.seed << ',' << nk << ',' << algo << ',';
        try {
          SolveReport rep = run_algorithm(algo, inst, config);
          out << fmt(rep.total_power_watt) << ',' << fmt(rep.rate_loss_pct)
              << ',' << fmt(rep.wall_time_s) << ',' << rep.iterations << '\n';
          stats[a].count += 1;
          stats[a].power += rep.total_power_watt;
          stats[a].loss += rep.rate_loss_pct;
          stats[a].time += rep.wall_time_s;
          stats[a].iters += rep.iterations;
        } catch (const std::exception&) {
          out << ",,,\n";  // error row: metrics unavailable
        }
      }
    }
    for (size_t a = 0; a < config.algorithms.size(); ++a) {
      const RowStats& s = stats[a];
      out << "avg,," << nk << ',' << config.algorithms[a] << ',';
      if (s.count == 0) {
        out << ",,,\n";
        continue;
      }
      const double d = static_cast<double>(s.count);
      out << fmt(s.power / d) << ',' << fmt(s.loss / d) << ','
          << fmt(s.time / d) << ','
          << fmt(static_cast<double>(s.iters) / d) << '\n';
    }
  }
}

}  // namespace ofdma
