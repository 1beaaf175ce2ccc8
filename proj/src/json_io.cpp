#include "ofdma/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace ofdma {

using nlohmann::json;

json instance_to_json(const Instance& inst) {
  json j;
  j["cells"] = inst.num_cells();
  j["bandwidth_hz"] = inst.bandwidth_hz();
  j["noise_watt"] = inst.noise_watt();
  j["eta0"] = inst.formats().eta0();
  j["formats"] = inst.formats().values();
  j["subcarriers"] = inst.num_subcarriers();
  json users = json::array();
  for (const User& u : inst.users()) {
    users.push_back({{"id", u.id}, {"cell", u.cell + 1}, {"demand", u.demand}});
  }
  j["users"] = std::move(users);
  json gain = json::array();
  json cross = json::array();
  for (int i = 0; i < inst.num_users(); ++i) {
    json row = json::array();
    for (int jj = 0; jj < inst.num_subcarriers(); ++jj) {
      row.push_back(inst.gain(i, jj));
    }
    gain.push_back(std::move(row));
    json planes = json::array();
    for (int k = 0; k < inst.num_cells(); ++k) {
      json plane = json::array();
      for (int jj = 0; jj < inst.num_subcarriers(); ++jj) {
        plane.push_back(k == inst.user(i).cell ? 0.0
                                               : inst.cross_gain(i, k, jj));
      }
      planes.push_back(std::move(plane));
    }
    cross.push_back(std::move(planes));
  }
  j["gain"] = std::move(gain);
  j["cross_gain"] = std::move(cross);
  return j;
}

Instance instance_from_json(const json& j) {
  const int c = j.at("cells").get<int>();
  const int m = j.at("subcarriers").get<int>();
  FormatSet formats(j.at("eta0").get<double>(),
                    j.at("formats").get<std::vector<int>>());
  std::vector<User> users;
  for (const auto& ju : j.at("users")) {
    users.push_back({ju.at("id").get<int>(), ju.at("cell").get<int>() - 1,
                     ju.at("demand").get<int>()});
  }
  auto gain = j.at("gain").get<std::vector<std::vector<double>>>();
  auto cross =
      j.at("cross_gain").get<std::vector<std::vector<std::vector<double>>>>();
  return Instance(c, m, j.at("bandwidth_hz").get<double>(),
                  j.at("noise_watt").get<double>(), std::move(formats),
                  std::move(users), std::move(gain), std::move(cross));
}

json allocation_to_json(const Instance& inst, const Allocation& alloc) {
  json entries = json::array();
  // Users are listed in instance order; ids are what goes to disk.
  for (int i = 0; i < inst.num_users(); ++i) {
    for (int jj = 0; jj < inst.num_subcarriers(); ++jj) {
      const int q = alloc.format_at(i, jj);
      if (q == 0) continue;
      entries.push_back({{"user", inst.user(i).id},
                         {"subcarrier", jj + 1},
                         {"format", q}});
    }
  }
  return json{{"assignments", std::move(entries)}};
}

Allocation allocation_from_json(const Instance& inst, const json& j) {
  Allocation alloc(inst.num_users(), inst.num_subcarriers());
  for (const auto& e : j.at("assignments")) {
    const int id = e.at("user").get<int>();
    int index = -1;
    for (int i = 0; i < inst.num_users(); ++i) {
      if (inst.user(i).id == id) {
        index = i;
        break;
      }
    }
    if (index < 0) {
      throw std::invalid_argument("allocation: unknown user id " +
                                  std::to_string(id));
    }
    const int jj = e.at("subcarrier").get<int>() - 1;
    if (jj < 0 || jj >= inst.num_subcarriers()) {
      throw std::invalid_argument("allocation: subcarrier out of range");
    }
    alloc.assign(index, jj, e.at("format").get<int>());
  }
  return alloc;
}

json report_to_json(const SolveReport& report) {
  return json{{"algorithm", report.algorithm},
              {"total_power_watt", report.total_power_watt},
              {"rate_loss_pct", report.rate_loss_pct},
              {"wall_time_s", report.wall_time_s},
              {"iterations", report.iterations},
              {"feasible", report.feasible},
              {"instance_id", report.instance_id},
              {"seed", report.seed}};
}

json scenario_config_to_json(const ScenarioConfig& c) {
  json j{{"cells", c.cells},
         {"subcarriers", c.subcarriers},
         {"users_per_cell", c.users_per_cell},
         {"total_bandwidth_hz", c.total_bandwidth_hz},
         {"cell_radius_m", c.cell_radius_m},
         {"rms_delay_spread_s", c.rms_delay_spread_s},
         {"eta0", c.eta0},
         {"formats", c.formats},
         {"noise_density_dbm_hz", c.noise_density_dbm_hz},
         {"pathloss_ref_db", c.pathloss_ref_db},
         {"pathloss_slope_db", c.pathloss_slope_db},
         {"shadowing_sigma_db", c.shadowing_sigma_db},
         {"min_distance_m", c.min_distance_m},
         {"num_taps", c.num_taps},
         {"seed", c.seed}};
  if (c.demand_override) j["demand"] = *c.demand_override;
  return j;
}

ScenarioConfig scenario_config_from_json(const json& j) {
  ScenarioConfig c;
  auto set_int = [&](const char* key, int& out) {
    if (j.contains(key)) out = j.at(key).get<int>();
  };
  auto set_double = [&](const char* key, double& out) {
    if (j.contains(key)) out = j.at(key).get<double>();
  };
  set_int("cells", c.cells);
  set_int("subcarriers", c.subcarriers);
  set_int("users_per_cell", c.users_per_cell);
  set_double("total_bandwidth_hz", c.total_bandwidth_hz);
  set_double("cell_radius_m", c.cell_radius_m);
  set_double("rms_delay_spread_s", c.rms_delay_spread_s);
  set_double("eta0", c.eta0);
  if (j.contains("formats")) c.formats = j.at("formats").get<std::vector<int>>();
  set_double("noise_density_dbm_hz", c.noise_density_dbm_hz);
  set_double("pathloss_ref_db", c.pathloss_ref_db);
  set_double("pathloss_slope_db", c.pathloss_slope_db);
  set_double("shadowing_sigma_db", c.shadowing_sigma_db);
  set_double("min_distance_m", c.min_distance_m);
  set_int("num_taps", c.num_taps);
  if (j.contains("demand")) c.demand_override = j.at("demand").get<int>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace ofdma
