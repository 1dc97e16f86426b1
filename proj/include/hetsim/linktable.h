// Copyright 2026 the hetsim authors.
// SPDX-License-Identifier: Apache-2.0
//
// Per-(user, BS) channel tables: linear gain, SINR, spectral efficiency.

#ifndef HETSIM_LINKTABLE_H_
#define HETSIM_LINKTABLE_H_

#include <string>
#include <vector>

#include "hetsim/model.h"
#include "hetsim/table.h"

namespace hetsim {

struct LinkTable {
  Table gain;     // g_ij, linear
  Table sinr;     // linear
  Table rate;     // c_ij = log2(1 + SINR_ij), bits/s/Hz
  Table ln_rate;  // ln c_ij, cached for the log-utility solvers
  std::vector<int> bs_tier;        // tier of each BS column
  std::vector<double> bs_power_mw; // transmit power of each BS column
  int n_tiers = 0;
  double noise_mw = 0.0;

  int n_users() const { return gain.rows; }
  int n_bs() const { return gain.cols; }
};

// Gains: g_ij = 10^(-(L(d_ij) + S_ij)/10), S_ij iid Normal(0, sigma_s^2) dB,
// drawn from the scenario seed's shadowing substream. SINR treats every
// other BS as a full-power interferer.
LinkTable compute_link_table(const Scenario& scenario);

// Same channel model over caller-supplied shadowing (dB, N_U x N_B); used by
// tests that pin shadowing by hand.
LinkTable compute_link_table_with_shadowing(const Scenario& scenario,
                                            const Table& shadowing_db);

// CSV: user_id,bs_id,gain,sinr_db,rate_bps_hz
void export_link_table_csv(const LinkTable& links, const std::string& path);

}  // namespace hetsim

#endif  // HETSIM_LINKTABLE_H_
