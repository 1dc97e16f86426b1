// Copyright 2026 the hetsim authors.
// SPDX-License-Identifier: Apache-2.0

#include "hetsim/linktable.h"

#include <cmath>

#include "hetsim/csv.h"
#include "hetsim/rng.h"
#include "hetsim/topology.h"

namespace hetsim {

namespace {

LinkTable build(const Scenario& sc, const Table& shadowing_db) {
  const int nu = sc.n_users();
  const int nb = sc.n_bs();
  const ChannelParams params = channel_params(sc.config);

  LinkTable lt;
  lt.gain = Table(nu, nb);
  lt.sinr = Table(nu, nb);
  lt.rate = Table(nu, nb);
  lt.ln_rate = Table(nu, nb);
  lt.n_tiers = sc.n_tiers();
  lt.noise_mw = std::pow(10.0, params.noise_dbm / 10.0);
  lt.bs_tier.reserve(nb);
  lt.bs_power_mw.reserve(nb);
  for (const BaseStation& bs : sc.bss) {
    lt.bs_tier.push_back(bs.tier);
    lt.bs_power_mw.push_back(std::pow(10.0, bs.power_dbm / 10.0));
  }

  std::vector<double> prx(nb);
  for (int i = 0; i < nu; ++i) {
    const User& u = sc.users[i];
    double total = lt.noise_mw;
    for (int j = 0; j < nb; ++j) {
      const BaseStation& bs = sc.bss[j];
      const double d =
          torus_distance(u.x, u.y, bs.x, bs.y, sc.config.region_m);
      const double loss_db = path_loss_db(bs.tier, d, params) +
                             shadowing_db(i, j);
      const double g = std::pow(10.0, -loss_db / 10.0);
      lt.gain(i, j) = g;
      prx[j] = lt.bs_power_mw[j] * g;
      total += prx[j];
    }
    for (int j = 0; j < nb; ++j) {
      const double s = prx[j] / (total - prx[j]);
      lt.sinr(i, j) = s;
      lt.rate(i, j) = std::log2(1.0 + s);
      lt.ln_rate(i, j) = std::log(lt.rate(i, j));
    }
  }
  return lt;
}

}  // namespace

LinkTable compute_link_table(const Scenario& scenario) {
  const int nu = scenario.n_users();
  const int nb = scenario.n_bs();
  Table shadow(nu, nb);
  Rng rng = Rng::substream(scenario.config.seed, 1);
  const double sigma = scenario.config.shadowing_db;
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nb; ++j) {
      shadow(i, j) = rng.normal(0.0, sigma);
    }
  }
  return build(scenario, shadow);
}

LinkTable compute_link_table_with_shadowing(const Scenario& scenario,
                                            const Table& shadowing_db) {
  return build(scenario, shadowing_db);
}

void export_link_table_csv(const LinkTable& links, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "user_id,bs_id,gain,sinr_db,rate_bps_hz\n";
  for (int i = 0; i < links.n_users(); ++i) {
    for (int j = 0; j < links.n_bs(); ++j) {
      out << i << ',' << j << ',' << fmt(links.gain(i, j)) << ','
          << fmt(10.0 * std::log10(links.sinr(i, j))) << ','
          << fmt(links.rate(i, j)) << '\n';
    }
  }
}

}  // namespace hetsim
