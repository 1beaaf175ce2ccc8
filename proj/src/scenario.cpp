#include "ofdma/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include "ofdma/rng.hpp"

namespace ofdma {

namespace {

constexpr double kPi = 3.14159265358979323846;

double rms_delay(const std::vector<double>& power, double spacing) {
  double total = 0.0, mean = 0.0, second = 0.0;
  for (size_t l = 0; l < power.size(); ++l) {
    const double t = static_cast<double>(l) * spacing;
    total += power[l];
    mean += power[l] * t;
    second += power[l] * t * t;
  }
  mean /= total;
  second /= total;
  return std::sqrt(std::max(0.0, second - mean * mean));
}

std::vector<double> profile_for_decay(int num_taps, double spacing,
                                      double tau) {
  std::vector<double> p(static_cast<size_t>(num_taps));
  double sum = 0.0;
  for (int l = 0; l < num_taps; ++l) {
    p[static_cast<size_t>(l)] =
        std::exp(-static_cast<double>(l) * spacing / tau);
    sum += p[static_cast<size_t>(l)];
  }
  for (double& v : p) v /= sum;
  return p;
}

/// Uniform point in a hexagon of circumradius R centered at the origin,
/// vertices on the axes directions k*60 degrees.
std::array<double, 2> sample_hexagon(Rng& rng, double radius) {
  const double half_height = radius * std::sqrt(3.0) / 2.0;
  while (true) {
    const double x = rng.uniform(-radius, radius);
    const double y = rng.uniform(-half_height, half_height);
    if (std::sqrt(3.0) * std::fabs(x) + std::fabs(y) <=
        std::sqrt(3.0) * radius) {
      return {x, y};
    }
  }
}

}  // namespace

std::vector<double> exponential_delay_profile(int num_taps, double spacing_s,
                                              double target_rms_s) {
  if (num_taps < 1) {
    throw std::invalid_argument("delay profile: need at least one tap");
  }
  if (target_rms_s == 0.0 || num_taps == 1) {
    if (target_rms_s != 0.0) {
      throw std::invalid_argument(
          "delay profile: single tap cannot have nonzero delay spread");
    }
    return std::vector<double>{1.0};
  }
  // rms grows monotonically with the decay constant and is bounded by the
  // uniform profile's rms; bisect on tau.
  std::vector<double> flat(static_cast<size_t>(num_taps),
                           1.0 / static_cast<double>(num_taps));
  const double rms_sup = rms_delay(flat, spacing_s);
  if (target_rms_s >= rms_sup) {
    throw std::invalid_argument(
        "delay profile: target rms delay unreachable with this tap count");
  }
  double lo = spacing_s * 1e-6, hi = spacing_s * 1e6;
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (rms_delay(profile_for_decay(num_taps, spacing_s, mid), spacing_s) <
        target_rms_s) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return profile_for_decay(num_taps, spacing_s, std::sqrt(lo * hi));
}

GeneratedScenario generate_with_trace(const ScenarioConfig& config) {
  if (config.cells < 1 || config.cells > 7) {
    throw std::invalid_argument(
        "scenario: cell count must be 1..7 (center plus first ring)");
  }
  if (config.subcarriers < 1 || config.users_per_cell < 1) {
    throw std::invalid_argument("scenario: need subcarriers and users");
  }
  if (!config.demand_override &&
      config.subcarriers % config.users_per_cell != 0) {
    throw std::invalid_argument(
        "scenario: subcarriers must be divisible by users_per_cell");
  }
  if (config.demand_override && *config.demand_override < 0) {
    throw std::invalid_argument("scenario: demand override must be >= 0");
  }
  const int demand = config.demand_override
                         ? *config.demand_override
                         : config.subcarriers / config.users_per_cell;
  if (static_cast<long long>(demand) * config.users_per_cell >
      config.subcarriers) {
    throw std::invalid_argument("scenario: per-cell demand exceeds subcarriers");
  }

  const int c = config.cells;
  const int m = config.subcarriers;
  const int n = c * config.users_per_cell;
  const double subcarrier_bw = config.total_bandwidth_hz / m;
  const double noise_watt =
      std::pow(10.0, (config.noise_density_dbm_hz - 30.0) / 10.0) *
      subcarrier_bw;
  const double tap_spacing = 1.0 / config.total_bandwidth_hz;
  const std::vector<double> profile = exponential_delay_profile(
      config.num_taps, tap_spacing, config.rms_delay_spread_s);

  Rng rng(config.seed);

  ScenarioTrace trace;
  trace.bs_position.push_back({0.0, 0.0});
  const double ring = std::sqrt(3.0) * config.cell_radius_m;
  for (int k = 1; k < c; ++k) {
    const double angle = kPi / 6.0 + kPi / 3.0 * static_cast<double>(k - 1);
    trace.bs_position.push_back(
        {ring * std::cos(angle), ring * std::sin(angle)});
  }

  std::vector<User> users;
  for (int k = 0; k < c; ++k) {
    for (int u = 0; u < config.users_per_cell; ++u) {
      // Uniform in the hexagon, at least min_distance from the own BS.
      std::array<double, 2> pos{};
      do {
        pos = sample_hexagon(rng, config.cell_radius_m);
      } while (std::hypot(pos[0], pos[1]) < config.min_distance_m);
      pos[0] += trace.bs_position[static_cast<size_t>(k)][0];
      pos[1] += trace.bs_position[static_cast<size_t>(k)][1];
      trace.user_position.push_back(pos);
      users.push_back({static_cast<int>(users.size()) + 1, k, demand});
    }
  }

  std::vector<std::vector<double>> gain(
      static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(m)));
  std::vector<std::vector<std::vector<double>>> cross(
      static_cast<size_t>(n),
      std::vector<std::vector<double>>(
          static_cast<size_t>(c),
          std::vector<double>(static_cast<size_t>(m), 0.0)));
  trace.link.assign(static_cast<size_t>(n),
                    std::vector<LinkTrace>(static_cast<size_t>(c)));

  std::vector<double> tap_re(profile.size()), tap_im(profile.size());
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < c; ++k) {
      LinkTrace& lt = trace.link[static_cast<size_t>(i)][static_cast<size_t>(k)];
      const auto& up = trace.user_position[static_cast<size_t>(i)];
      const auto& bp = trace.bs_position[static_cast<size_t>(k)];
      lt.distance_m =
          std::max(config.min_distance_m, std::hypot(up[0] - bp[0], up[1] - bp[1]));
      lt.pathloss_db = config.pathloss_ref_db +
                       config.pathloss_slope_db *
                           std::log10(lt.distance_m / 1000.0);
      lt.shadowing_db = config.shadowing_sigma_db * rng.normal();
      const double large_scale =
          std::pow(10.0, (-lt.pathloss_db + lt.shadowing_db) / 10.0);

      // Independent tapped-delay-line channel for this link.
      for (size_t l = 0; l < profile.size(); ++l) {
        const double sigma = std::sqrt(profile[l] / 2.0);
        tap_re[l] = sigma * rng.normal();
        tap_im[l] = sigma * rng.normal();
      }
      for (int j = 0; j < m; ++j) {
        const double f = subcarrier_bw * static_cast<double>(j);
        double re = 0.0, im = 0.0;
        for (size_t l = 0; l < profile.size(); ++l) {
          const double phase =
              -2.0 * kPi * f * static_cast<double>(l) * tap_spacing;
          const double cs = std::cos(phase), sn = std::sin(phase);
          re += tap_re[l] * cs - tap_im[l] * sn;
          im += tap_re[l] * sn + tap_im[l] * cs;
        }
        const double fading = re * re + im * im;
        const double g = large_scale * fading;
        if (k == users[static_cast<size_t>(i)].cell) {
          gain[static_cast<size_t>(i)][static_cast<size_t>(j)] = g;
        } else {
          cross[static_cast<size_t>(i)][static_cast<size_t>(k)]
               [static_cast<size_t>(j)] = g;
        }
      }
    }
  }

  FormatSet formats(config.eta0, config.formats);
  Instance inst(c, m, subcarrier_bw, noise_watt, std::move(formats),
                std::move(users), std::move(gain), std::move(cross));
  return {std::move(inst), std::move(trace)};
}

Instance generate(const ScenarioConfig& config) {
  return generate_with_trace(config).instance;
}

GainStatistics gain_statistics(const Instance& inst) {
  GainStatistics stats;
  const int m = inst.num_subcarriers();

  // Collect every link's gain row (own first, then cross, user-major).
  double own_sum = 0.0;
  for (int i = 0; i < inst.num_users(); ++i) {
    for (int j = 0; j < m; ++j) own_sum += inst.gain(i, j);
  }
  std::vector<std::vector<double>> all_rows;
  for (int i = 0; i < inst.num_users(); ++i) {
    std::vector<double> own(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) own[static_cast<size_t>(j)] = inst.gain(i, j);
    all_rows.push_back(std::move(own));
    for (int k = 0; k < inst.num_cells(); ++k) {
      if (k == inst.user(i).cell) continue;
      std::vector<double> row(static_cast<size_t>(m));
      for (int j = 0; j < m; ++j) {
        row[static_cast<size_t>(j)] = inst.cross_gain(i, k, j);
      }
      all_rows.push_back(std::move(row));
    }
  }
  stats.mean_own_gain =
      own_sum / (static_cast<double>(inst.num_users()) * m);

  for (const auto& row : all_rows) {
    double mean = 0.0;
    for (double g : row) mean += g;
    stats.link_mean.push_back(mean / m);
  }

  // Pooled correlation per subcarrier offset over per-link normalized gains.
  stats.frequency_correlation.assign(static_cast<size_t>(m), 0.0);
  for (int offset = 0; offset < m; ++offset) {
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    long long count = 0;
    for (size_t r = 0; r < all_rows.size(); ++r) {
      const double norm = stats.link_mean[r] > 0.0 ? stats.link_mean[r] : 1.0;
      for (int j = 0; j + offset < m; ++j) {
        const double x = all_rows[r][static_cast<size_t>(j)] / norm;
        const double y = all_rows[r][static_cast<size_t>(j + offset)] / norm;
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
        ++count;
      }
    }
    if (count == 0) continue;
    const double nfac = static_cast<double>(count);
    const double cov = sxy / nfac - (sx / nfac) * (sy / nfac);
    const double vx = sxx / nfac - (sx / nfac) * (sx / nfac);
    const double vy = syy / nfac - (sy / nfac) * (sy / nfac);
    stats.frequency_correlation[static_cast<size_t>(offset)] =
        (vx > 0.0 && vy > 0.0) ? cov / std::sqrt(vx * vy) : 1.0;
  }
  return stats;
}

}  // namespace ofdma
