// Copyright 2026 the hetsim authors.
// SPDX-License-Identifier: Apache-2.0
//
// Domain types for the multi-tier downlink scenario: tiers, base stations,
// users, channel parameters.

#ifndef HETSIM_MODEL_H_
#define HETSIM_MODEL_H_

#include <cstdint>
#include <string>
#include <vector>

namespace hetsim {

// One deployment tier. Tier 0 is the macro tier: its BSs sit on the fixed
// layout and its count fields are ignored.
struct TierConfig {
  double power_dbm = 46.0;
  // Deterministic per-macrocell count, used when density < 0.
  int count_per_macro = 0;
  // Poisson mean per macrocell; negative selects deterministic counts.
  double density = -1.0;
  double pathloss_intercept_db = 34.0;
  double pathloss_slope_db = 40.0;
};

struct ScenarioConfig {
  double region_m = 560.0;
  // "hex": macro ring around a center BS, wrapped on the torus; "single".
  std::string macro_layout = "hex";
  int n_macro = 7;
  double isd_m = 160.0;  // center-to-ring macro distance
  std::vector<TierConfig> tiers;
  double shadowing_db = 8.0;
  double noise_dbm = -104.0;
  double bandwidth_hz = 10e6;  // informational only
  int n_users = 210;
  std::uint64_t seed = 1;
};

// Radio parameters in the shape the propagation code wants them.
struct ChannelParams {
  std::vector<double> pathloss_intercept_db;  // indexed by tier
  std::vector<double> pathloss_slope_db;
  double shadowing_db = 8.0;
  double noise_dbm = -104.0;
  double bandwidth_hz = 10e6;
  double d_min_m = 1.0;  // distance clamp; keeps path loss finite
};

struct BaseStation {
  int id = 0;
  int tier = 0;
  double x = 0.0;
  double y = 0.0;
  double power_dbm = 0.0;
};

struct User {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
};

struct Scenario {
  ScenarioConfig config;
  std::vector<BaseStation> bss;
  std::vector<User> users;

  int n_bs() const { return static_cast<int>(bss.size()); }
  int n_users() const { return static_cast<int>(users.size()); }
  int n_tiers() const { return static_cast<int>(config.tiers.size()); }
};

// Three-tier setup used by the experiments: 7 macros (hex, 160 m ISD) in a
// 560 m wrapped square, 5 picos and 20 femtos per macrocell, 30 users per
// macrocell, 8 dB shadowing, -104 dBm noise.
ScenarioConfig default_config();

ChannelParams channel_params(const ScenarioConfig& config);

// JSON round-trip for the config schema. Parsing accepts partial documents
// and fills the rest from default_config().
ScenarioConfig config_from_json(const std::string& text);
std::string config_to_json(const ScenarioConfig& config);
ScenarioConfig load_config(const std::string& path);
void save_config(const ScenarioConfig& config, const std::string& path);

}  // namespace hetsim

#endif  // HETSIM_MODEL_H_
