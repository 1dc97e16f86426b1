// Copyright 2026 the hetsim authors.
// SPDX-License-Identifier: Apache-2.0
//
// Scenario generation: fixed macro layout, uniformly placed small cells and
// users, toroidal geometry.

#ifndef HETSIM_TOPOLOGY_H_
#define HETSIM_TOPOLOGY_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "hetsim/model.h"

namespace hetsim {

// Shortest distance on the wrapped square [0, region)^2.
double torus_distance(double ax, double ay, double bx, double by,
                      double region);

// Macro positions for the configured layout: center plus up to six ring
// neighbors at isd_m, wrapped into the region.
std::vector<std::pair<double, double>> macro_positions(
    const ScenarioConfig& config);

// intercept + slope * log10(d), d clamped to params.d_min_m.
double path_loss_db(int tier, double distance_m, const ChannelParams& params);

// Builds the full scenario from (config, seed). Identical inputs yield a
// bit-identical scenario. Throws std::invalid_argument on a config with no
// users, no BSs, or out-of-range fields.
Scenario generate_scenario(const ScenarioConfig& config, std::uint64_t seed);

}  // namespace hetsim

#endif  // HETSIM_TOPOLOGY_H_
