// Copyright 2026 the hetsim authors.
// SPDX-License-Identifier: Apache-2.0

#include "hetsim/topology.h"

#include <cmath>
#include <stdexcept>

#include "hetsim/rng.h"

namespace hetsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap(double v, double region) {
  double w = std::fmod(v, region);
  if (w < 0.0) w += region;
  return w;
}

void validate(const ScenarioConfig& config) {
  if (config.n_users < 1) {
    throw std::invalid_argument("config: need at least one user");
  }
  if (config.tiers.empty()) {
    throw std::invalid_argument("config: need at least one tier");
  }
  if (config.region_m <= 0.0) {
    throw std::invalid_argument("config: region_m must be positive");
  }
  if (config.macro_layout != "hex" && config.macro_layout != "single") {
    throw std::invalid_argument("config: unknown macro_layout '" +
                                config.macro_layout + "'");
  }
  const int n_macro = config.macro_layout == "single" ? 1 : config.n_macro;
  if (n_macro < 1 || n_macro > 7) {
    throw std::invalid_argument("config: n_macro must be in [1, 7]");
  }
  if (config.shadowing_db < 0.0) {
    throw std::invalid_argument("config: shadowing_db must be >= 0");
  }
  for (const TierConfig& t : config.tiers) {
    if (t.pathloss_slope_db <= 0.0) {
      throw std::invalid_argument("config: pathloss_slope_db must be > 0");
    }
    if (t.density < 0.0 && t.count_per_macro < 0) {
      throw std::invalid_argument("config: negative count_per_macro");
    }
  }
}

}  // namespace

double torus_distance(double ax, double ay, double bx, double by,
                      double region) {
  double dx = std::fabs(ax - bx);
  double dy = std::fabs(ay - by);
  dx = std::min(dx, region - dx);
  dy = std::min(dy, region - dy);
  return std::hypot(dx, dy);
}

std::vector<std::pair<double, double>> macro_positions(
    const ScenarioConfig& config) {
  const double region = config.region_m;
  const double cx = region / 2.0;
  const double cy = region / 2.0;
  std::vector<std::pair<double, double>> out = {{cx, cy}};
  const int n_macro = config.macro_layout == "single" ? 1 : config.n_macro;
  for (int k = 0; k + 1 < n_macro; ++k) {
    const double ang = 2.0 * kPi * k / 6.0;
    out.emplace_back(wrap(cx + config.isd_m * std::cos(ang), region),
                     wrap(cy + config.isd_m * std::sin(ang), region));
  }
  return out;
}

double path_loss_db(int tier, double distance_m, const ChannelParams& params) {
  const double d = std::max(distance_m, params.d_min_m);
  return params.pathloss_intercept_db[tier] +
         params.pathloss_slope_db[tier] * std::log10(d);
}

Scenario generate_scenario(const ScenarioConfig& config, std::uint64_t seed) {
  validate(config);
  Scenario sc;
  sc.config = config;
  sc.config.seed = seed;
  const double region = config.region_m;
  const int n_macro = config.macro_layout == "single" ? 1 : config.n_macro;
  sc.config.n_macro = n_macro;

  Rng rng = Rng::substream(seed, 0);
  int next_id = 0;
  for (const auto& [x, y] : macro_positions(sc.config)) {
    sc.bss.push_back({next_id++, 0, x, y, config.tiers[0].power_dbm});
  }
  for (int tier = 1; tier < static_cast<int>(config.tiers.size()); ++tier) {
    const TierConfig& t = config.tiers[tier];
    for (int m = 0; m < n_macro; ++m) {
      const int count =
          t.density >= 0.0 ? rng.poisson(t.density) : t.count_per_macro;
      for (int k = 0; k < count; ++k) {
        const double x = rng.uniform(0.0, region);
        const double y = rng.uniform(0.0, region);
        sc.bss.push_back({next_id++, tier, x, y, t.power_dbm});
      }
    }
  }
  for (int i = 0; i < config.n_users; ++i) {
    sc.users.push_back({i, rng.uniform(0.0, region), rng.uniform(0.0, region)});
  }
  if (sc.bss.empty()) {
    throw std::invalid_argument("config: generated zero base stations");
  }
  return sc;
}

}  // namespace hetsim
