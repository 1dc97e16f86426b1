// Copyright 2026 the hetsim authors.
// SPDX-License-Identifier: Apache-2.0
//
// Associations, loads, long-term rates, the closed-form association rules
// (max-SINR, SINR bias, rate bias) and fractional-to-integer rounding.

#ifndef HETSIM_ASSOCIATION_H_
#define HETSIM_ASSOCIATION_H_

#include <string>
#include <vector>

#include "hetsim/linktable.h"
#include "hetsim/table.h"

namespace hetsim {

// Row-stochastic association table. integer == true means exactly one 1 per
// row; fractional rows sum to 1 within 1e-9.
struct Association {
  Table x;
  bool integer = false;
};

// Integer association from per-user BS choices.
Association association_from_choices(const std::vector<int>& choice, int n_bs);

// Per-user argmax column of an integer association.
std::vector<int> association_choices(const Association& assoc);

// Per-BS loads K_j = column sums of x.
std::vector<double> loads(const Association& assoc);

struct RateOutcome {
  std::vector<double> rate;  // R_i = sum_j x_ij c_ij / K_j
  double utility = 0.0;      // sum_i ln R_i
};

// Long-term rates under equal per-BS resource split. Empty BSs contribute
// nothing. Throws std::invalid_argument if some row does not sum to 1.
RateOutcome long_term_rates(const Association& assoc, const LinkTable& links);

// Per-tier factors, linear units, tier 0 pinned to 1.
struct BiasConfig {
  std::vector<double> sinr_factors;  // A_j
  std::vector<double> rate_factors;  // B_j
};

BiasConfig unit_bias(int n_tiers);

// argmax_j SINR_ij, lowest BS id on ties.
Association max_sinr_assoc(const LinkTable& links);

// argmax_j A_tier(j) * SINR_ij. Throws std::invalid_argument on a
// nonpositive factor.
Association biased_sinr_assoc(const LinkTable& links, const BiasConfig& bias);

// argmax_j B_tier(j) * c_ij.
Association biased_rate_assoc(const LinkTable& links, const BiasConfig& bias);

// Per-user argmax of x_ij, lowest id on ties; integral rows pass through.
Association round_fractional(const Association& assoc);

// CSV: user_id,bs_id,weight (nonzero entries only).
void export_association_csv(const Association& assoc, const std::string& path);

}  // namespace hetsim

#endif  // HETSIM_ASSOCIATION_H_
