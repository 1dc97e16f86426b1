// Copyright 2026 the hetsim authors.
// SPDX-License-Identifier: Apache-2.0

#include "hetsim/model.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hetsim {

ScenarioConfig default_config() {
  ScenarioConfig cfg;
  cfg.region_m = 560.0;
  cfg.macro_layout = "hex";
  cfg.n_macro = 7;
  cfg.isd_m = 160.0;
  cfg.tiers = {
      {46.0, 0, -1.0, 34.0, 40.0},   // macro
      {35.0, 5, -1.0, 34.0, 40.0},   // pico
      {20.0, 20, -1.0, 37.0, 30.0},  // femto
  };
  cfg.shadowing_db = 8.0;
  cfg.noise_dbm = -104.0;
  cfg.bandwidth_hz = 10e6;
  cfg.n_users = 30 * cfg.n_macro;
  cfg.seed = 1;
  return cfg;
}

ChannelParams channel_params(const ScenarioConfig& config) {
  ChannelParams p;
  for (const TierConfig& t : config.tiers) {
    p.pathloss_intercept_db.push_back(t.pathloss_intercept_db);
    p.pathloss_slope_db.push_back(t.pathloss_slope_db);
  }
  p.shadowing_db = config.shadowing_db;
  p.noise_dbm = config.noise_dbm;
  p.bandwidth_hz = config.bandwidth_hz;
  return p;
}

namespace {

using nlohmann::json;

json tier_to_json(const TierConfig& t) {
  json j;
  j["power_dbm"] = t.power_dbm;
  if (t.density >= 0.0) {
    j["density"] = t.density;
  } else {
    j["count_per_macro"] = t.count_per_macro;
  }
  j["pathloss_intercept_db"] = t.pathloss_intercept_db;
  j["pathloss_slope_db"] = t.pathloss_slope_db;
  return j;
}

TierConfig tier_from_json(const json& j, const TierConfig& base) {
  TierConfig t = base;
  t.power_dbm = j.value("power_dbm", t.power_dbm);
  if (j.contains("density")) {
    t.density = j.at("density").get<double>();
  } else if (j.contains("count_per_macro")) {
    t.count_per_macro = j.at("count_per_macro").get<int>();
    t.density = -1.0;
  }
  t.pathloss_intercept_db =
      j.value("pathloss_intercept_db", t.pathloss_intercept_db);
  t.pathloss_slope_db = j.value("pathloss_slope_db", t.pathloss_slope_db);
  return t;
}

}  // namespace

ScenarioConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config parse error: ") +
                                e.what());
  }
  ScenarioConfig cfg = default_config();
  cfg.region_m = j.value("region_m", cfg.region_m);
  cfg.macro_layout = j.value("macro_layout", cfg.macro_layout);
  cfg.n_macro = j.value("n_macro", cfg.n_macro);
  if (cfg.macro_layout == "single") cfg.n_macro = 1;
  cfg.isd_m = j.value("isd_m", cfg.isd_m);
  if (j.contains("tiers")) {
    const json& tiers = j.at("tiers");
    if (!tiers.is_array() || tiers.empty()) {
      throw std::invalid_argument("config: tiers must be a nonempty array");
    }
    ScenarioConfig defaults = default_config();
    cfg.tiers.clear();
    for (std::size_t k = 0; k < tiers.size(); ++k) {
      TierConfig base =
          k < defaults.tiers.size() ? defaults.tiers[k] : TierConfig{};
      cfg.tiers.push_back(tier_from_json(tiers[k], base));
    }
  }
  cfg.shadowing_db = j.value("shadowing_db", cfg.shadowing_db);
  cfg.noise_dbm = j.value("noise_dbm", cfg.noise_dbm);
  cfg.bandwidth_hz = j.value("bandwidth_hz", cfg.bandwidth_hz);
  cfg.n_users = j.value("n_users", cfg.n_users);
  cfg.seed = j.value("seed", cfg.seed);
  return cfg;
}

std::string config_to_json(const ScenarioConfig& config) {
  json j;
  j["region_m"] = config.region_m;
  j["macro_layout"] = config.macro_layout;
  j["n_macro"] = config.n_macro;
  j["isd_m"] = config.isd_m;
  json tiers = json::array();
  for (const TierConfig& t : config.tiers) tiers.push_back(tier_to_json(t));
  j["tiers"] = tiers;
  j["shadowing_db"] = config.shadowing_db;
  j["noise_dbm"] = config.noise_dbm;
  j["bandwidth_hz"] = config.bandwidth_hz;
  j["n_users"] = config.n_users;
  j["seed"] = config.seed;
  return j.dump(2) + "\n";
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

void save_config(const ScenarioConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << config_to_json(config);
}

}  // namespace hetsim
