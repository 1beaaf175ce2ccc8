#ifndef OFDMA_SCENARIO_HPP
#define OFDMA_SCENARIO_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ofdma/model.hpp"

namespace ofdma {

/// Parameters of the random multi-cell drop.  Defaults reproduce the
/// benchmark setup: 7 hexagonal cells of radius 500 m, 16 subcarriers over
/// 5 MHz, frequency-selective Rayleigh fading with an exponential power
/// delay profile of 0.5 us rms delay spread, urban-macro path loss and
/// log-normal shadowing.
struct ScenarioConfig {
  int cells = 7;
  int subcarriers = 16;
  int users_per_cell = 4;
  double total_bandwidth_hz = 5e6;
  double cell_radius_m = 500.0;
  double rms_delay_spread_s = 0.5e-6;
  double eta0 = 1.0;
  std::vector<int> formats = {1, 2, 3, 4};
  double noise_density_dbm_hz = -174.0;
  double pathloss_ref_db = 128.1;       // at 1 km
  double pathloss_slope_db = 37.6;      // per decade of distance
  double shadowing_sigma_db = 8.0;
  double min_distance_m = 35.0;
  int num_taps = 16;
  /// Per-user rate demand; when unset every user asks subcarriers/users_per_cell.
  std::optional<int> demand_override;
  std::uint64_t seed = 1;
};

struct LinkTrace {
  double distance_m = 0.0;
  double pathloss_db = 0.0;
  double shadowing_db = 0.0;
};

/// Geometry and large-scale fading behind a generated instance, kept out
/// of the Instance itself; useful for diagnostics and tests.
struct ScenarioTrace {
  std::vector<std::array<double, 2>> bs_position;    // per cell
  std::vector<std::array<double, 2>> user_position;  // per user
  std::vector<std::vector<LinkTrace>> link;          // [user][cell]
};

struct GeneratedScenario {
  Instance instance;
  ScenarioTrace trace;
};

/// Mean tap powers (normalized to sum 1) of an exponential delay profile
/// whose rms delay spread equals target_rms_s, on num_taps taps spaced
/// spacing_s apart.  Throws if the target is unreachable on that grid.
std::vector<double> exponential_delay_profile(int num_taps, double spacing_s,
                                              double target_rms_s);

GeneratedScenario generate_with_trace(const ScenarioConfig& config);
Instance generate(const ScenarioConfig& config);

/// Channel sanity summary of a generated instance.
struct GainStatistics {
  /// Mean own-cell gain over all (user, subcarrier) pairs.
  double mean_own_gain = 0.0;
  /// Per-link mean subcarrier gain, own links then cross links in user-major
  /// order (matches ScenarioTrace::link layout minus the own-cell hole).
  std::vector<double> link_mean;
  /// Pearson correlation of normalized gains between subcarriers at each
  /// offset, pooled over every link of the instance; entry 0 is 1.
  std::vector<double> frequency_correlation;
};

GainStatistics gain_statistics(const Instance& inst);

}  // namespace ofdma

#endif  // OFDMA_SCENARIO_HPP
