// Command-line harness: generate instances, run the solvers, evaluate
// allocations and benchmark ensembles.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ofdma/bench.hpp"
#include "ofdma/exact.hpp"
#include "ofdma/hlagr.hpp"
#include "ofdma/hlp.hpp"
#include "ofdma/json_io.hpp"
#include "ofdma/scenario.hpp"

namespace {

using ofdma::Instance;

struct ScenarioFlags {
  std::string config_path;
  ofdma::ScenarioConfig config;
  bool demand_set = false;
  int demand = 0;
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& flags) {
  cmd->add_option("--config", flags.config_path,
                  "Scenario config JSON file (flags override it)");
  cmd->add_option("--cells", flags.config.cells, "Number of cells (1..7)");
  cmd->add_option("--subcarriers", flags.config.subcarriers,
                  "Number of subcarriers");
  cmd->add_option("--users-per-cell", flags.config.users_per_cell,
                  "Users per cell (must divide subcarriers)");
  cmd->add_option("--bandwidth", flags.config.total_bandwidth_hz,
                  "Total bandwidth in Hz");
  cmd->add_option("--radius", flags.config.cell_radius_m,
                  "Cell radius in meters");
  cmd->add_option("--delay-spread", flags.config.rms_delay_spread_s,
                  "RMS delay spread in seconds");
  cmd->add_option("--eta0", flags.config.eta0,
                  "Base spectral efficiency (bit/s/Hz)");
  cmd->add_option("--formats", flags.config.formats,
                  "Transmission format multipliers");
  cmd->add_option("--shadowing", flags.config.shadowing_sigma_db,
                  "Shadowing sigma in dB");
  cmd->add_option("--seed", flags.config.seed, "Random seed");
  cmd->add_option("--demand", flags.demand,
                  "Override per-user demand in rate units")
      ->each([&flags](const std::string&) { flags.demand_set = true; });
}

ofdma::ScenarioConfig resolve_scenario(const ScenarioFlags& flags,
                                       const CLI::App* cmd) {
  ofdma::ScenarioConfig config = flags.config;
  if (!flags.config_path.empty()) {
    config = ofdma::scenario_config_from_json(
        ofdma::load_json_file(flags.config_path));
    // Re-apply any flag the user set on top of the file.
    ofdma::ScenarioConfig defaults;
    auto keep = [&](const std::string& name) {
      return cmd->count(name) > 0;
    };
    if (keep("--cells")) config.cells = flags.config.cells;
    if (keep("--subcarriers")) config.subcarriers = flags.config.subcarriers;
    if (keep("--users-per-cell")) {
      config.users_per_cell = flags.config.users_per_cell;
    }
    if (keep("--bandwidth")) {
      config.total_bandwidth_hz = flags.config.total_bandwidth_hz;
    }
    if (keep("--radius")) config.cell_radius_m = flags.config.cell_radius_m;
    if (keep("--delay-spread")) {
      config.rms_delay_spread_s = flags.config.rms_delay_spread_s;
    }
    if (keep("--eta0")) config.eta0 = flags.config.eta0;
    if (keep("--formats")) config.formats = flags.config.formats;
    if (keep("--shadowing")) {
      config.shadowing_sigma_db = flags.config.shadowing_sigma_db;
    }
    if (keep("--seed")) config.seed = flags.config.seed;
  }
  if (flags.demand_set) config.demand_override = flags.demand;
  return config;
}

Instance load_instance(const std::string& path) {
  return ofdma::instance_from_json(ofdma::load_json_file(path));
}

int cmd_generate(const ScenarioFlags& flags, const CLI::App* cmd,
                 const std::string& out_path) {
  const Instance inst = ofdma::generate(resolve_scenario(flags, cmd));
  const auto j = ofdma::instance_to_json(inst);
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    ofdma::save_json_file(out_path, j);
  }
  return 0;
}

int cmd_solve(const std::string& instance_path, const std::string& algo,
              const ofdma::HlagrConfig& hlagr_cfg,
              const ofdma::HlpConfig& hlp_cfg,
              const ofdma::ExactConfig& exact_cfg,
              const std::string& alloc_out) {
  const Instance inst = load_instance(instance_path);
  ofdma::SolveReport report;
  ofdma::Allocation alloc;
  if (algo == "hlagr") {
    auto r = ofdma::run_hlagr(inst, hlagr_cfg);
    report = r.report;
    alloc = r.allocation;
  } else if (algo == "hlp") {
    auto r = ofdma::run_hlp(inst, hlp_cfg);
    report = r.report;
    alloc = r.allocation;
  } else if (algo == "exact") {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = ofdma::solve_exact(inst, exact_cfg);
    const auto t1 = std::chrono::steady_clock::now();
    if (!r.found) {
      std::cerr << (r.status == ofdma::ExactResult::Status::Infeasible
                        ? "instance is infeasible\n"
                        : "node budget exhausted before a solution\n");
      return 2;
    }
    report.algorithm = "exact";
    report.total_power_watt = r.power.total_power;
    report.rate_loss_pct = ofdma::rate_loss_percent(inst, r.allocation);
    report.iterations = r.nodes;
    report.feasible = r.power.feasible;
    report.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
    alloc = r.allocation;
  } else {
    std::cerr << "unknown algorithm '" << algo << "'\n";
    return 1;
  }
  std::cout << ofdma::report_to_json(report).dump(2) << "\n";
  if (!alloc_out.empty()) {
    ofdma::save_json_file(alloc_out, ofdma::allocation_to_json(inst, alloc));
  }
  return 0;
}

int cmd_evaluate(const std::string& instance_path,
                 const std::string& alloc_path) {
  const Instance inst = load_instance(instance_path);
  const ofdma::Allocation alloc =
      ofdma::allocation_from_json(inst, ofdma::load_json_file(alloc_path));
  const auto violations = ofdma::validate_allocation(inst, alloc);
  nlohmann::json out;
  out["violations"] = nlohmann::json::array();
  for (const auto& v : violations) {
    out["violations"].push_back(v.message);
  }
  bool exclusivity_ok = true;
  for (const auto& v : violations) {
    if (v.kind == ofdma::ViolationKind::CellExclusivity) {
      exclusivity_ok = false;
    }
  }
  if (exclusivity_ok) {
    const ofdma::PowerSolution ps = ofdma::evaluate(inst, alloc);
    out["total_power_watt"] = ps.total_power;
    out["feasible"] = ps.feasible;
    out["rate_loss_pct"] = ofdma::rate_loss_percent(inst, alloc);
  }
  std::cout << out.dump(2) << "\n";
  return violations.empty() ? 0 : 3;
}

int cmd_export_lp(const std::string& instance_path,
                  const std::string& out_path) {
  const Instance inst = load_instance(instance_path);
  const ofdma::MilpModel model = ofdma::build_milp(inst);
  if (out_path.empty()) {
    ofdma::export_lp(model, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 1;
    }
    ofdma::export_lp(model, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-cell OFDMA downlink power-minimization toolkit"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a random instance");
  ScenarioFlags gen_flags;
  add_scenario_flags(gen, gen_flags);
  std::string gen_out;
  gen->add_option("-o,--out", gen_out, "Output instance JSON (default stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "Run a solver on an instance");
  std::string solve_instance, solve_algo = "hlagr", solve_alloc_out;
  ofdma::HlagrConfig hlagr_cfg;
  ofdma::HlpConfig hlp_cfg;
  ofdma::ExactConfig exact_cfg;
  solve->add_option("-i,--instance", solve_instance, "Instance JSON")
      ->required();
  solve->add_option("--algo", solve_algo, "hlagr | hlp | exact");
  solve->add_option("--alloc-out", solve_alloc_out,
                    "Write the allocation JSON here");
  solve->add_option("--iters", hlagr_cfg.max_iters, "H-LAGR iterations");
  solve->add_option("--beta", hlagr_cfg.beta, "H-LAGR lambda factor");
  solve->add_option("--pmax-factor", hlagr_cfg.pmax_factor,
                    "H-LAGR subcarrier power cap factor");
  solve->add_option("--rounds", hlp_cfg.max_rounds, "H-LP round budget");
  solve->add_option("--stall", hlp_cfg.stall_rounds,
                    "H-LP rounds between demand reductions");
  solve->add_option("--step", hlp_cfg.reduction_step,
                    "H-LP demand reduction step");
  solve->add_option("--budget", exact_cfg.node_budget, "exact node budget");

  // evaluate
  auto* eval = app.add_subcommand("evaluate",
                                  "Price an allocation against an instance");
  std::string eval_instance, eval_alloc;
  eval->add_option("-i,--instance", eval_instance, "Instance JSON")->required();
  eval->add_option("-a,--allocation", eval_alloc, "Allocation JSON")
      ->required();

  // export-lp
  auto* exp = app.add_subcommand("export-lp",
                                 "Write the mixed-integer model in LP format");
  std::string exp_instance, exp_out;
  exp->add_option("-i,--instance", exp_instance, "Instance JSON")->required();
  exp->add_option("-o,--out", exp_out, "Output LP file (default stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "Ensemble benchmark to CSV");
  ScenarioFlags bench_flags;
  add_scenario_flags(bench, bench_flags);
  ofdma::BenchConfig bench_cfg;
  std::string bench_out;
  bench->add_option("--nk", bench_cfg.users_per_cell,
                    "users-per-cell classes to sweep");
  bench->add_option("--instances", bench_cfg.instances_per_class,
                    "Instances per class");
  bench->add_option("--algos", bench_cfg.algorithms,
                    "Algorithms: hlp hlagr exact");
  bench->add_option("-o,--out", bench_out, "Output CSV (default stdout)");
  bench->add_option("--iters", bench_cfg.hlagr.max_iters, "H-LAGR iterations");
  bench->add_option("--beta", bench_cfg.hlagr.beta, "H-LAGR lambda factor");
  bench->add_option("--pmax-factor", bench_cfg.hlagr.pmax_factor,
                    "H-LAGR subcarrier power cap factor");
  bench->add_option("--rounds", bench_cfg.hlp.max_rounds, "H-LP round budget");
  bench->add_option("--stall", bench_cfg.hlp.stall_rounds,
                    "H-LP rounds between demand reductions");
  bench->add_option("--step", bench_cfg.hlp.reduction_step,
                    "H-LP demand reduction step");
  bench->add_option("--budget", bench_cfg.exact.node_budget,
                    "exact node budget");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(gen_flags, gen, gen_out);
    if (solve->parsed()) {
      return cmd_solve(solve_instance, solve_algo, hlagr_cfg, hlp_cfg,
                       exact_cfg, solve_alloc_out);
    }
    if (eval->parsed()) return cmd_evaluate(eval_instance, eval_alloc);
    if (exp->parsed()) return cmd_export_lp(exp_instance, exp_out);
    if (bench->parsed()) {
      bench_cfg.scenario = resolve_scenario(bench_flags, bench);
      if (bench_out.empty()) {
        ofdma::run_bench(bench_cfg, std::cout);
      } else {
        std::ofstream out(bench_out);
        if (!out) {
          std::cerr << "cannot write " << bench_out << "\n";
          return 1;
        }
        ofdma::run_bench(bench_cfg, out);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
