// Copyright 2026 the hetsim authors.
// SPDX-License-Identifier: Apache-2.0
//
// Distributed primal-dual association: per-user best response to prices,
// per-BS supply/price updates, dynamic target-level stepsize.

#ifndef HETSIM_DUAL_H_
#define HETSIM_DUAL_H_

#include <limits>
#include <string>
#include <vector>

#include "hetsim/association.h"
#include "hetsim/linktable.h"

namespace hetsim {

struct StepsizeParams {
  double gamma = 1.0;    // relaxation factor, in (0, 2)
  double eps_init = -1.0;  // <= 0: auto, max(1.0, 0.1 |D(mu(0))|)
  double eps_min = -1.0;   // <= 0: auto, 1e-3 * N_U
  double beta = 0.5;     // shrink, in (0, 1)
  double rho = 1.5;      // grow, > 1
};

struct DualState {
  std::vector<double> mu;      // per-BS price
  std::vector<double> supply;  // K_j = min(N_U, e^(mu_j - 1))
  std::vector<double> demand;  // sum_i x_ij from the last user step
  int t = 0;
  double eps = 0.0;
  double best = 0.0;  // min_tau D(mu(tau))
};

struct DualTracePoint {
  int iter = 0;
  double dual_value = 0.0;
  double stepsize = 0.0;
  double epsilon = 0.0;
  double max_imbalance = 0.0;
  double primal_utility = 0.0;
};

struct DualResult {
  Association assoc;  // last user step, integer by construction
  DualState state;
  std::vector<DualTracePoint> trace;
  int iters = 0;
  bool converged = false;   // balance criterion met
  bool plateaued = false;   // best dual value stalled
  double min_dual = 0.0;
  // Level-method guarantee, recorded against the caller-supplied reference
  // (or the centralized optimum computed on the spot when none is given):
  // min_t D(mu(t)) <= d_ref + eps_min + 1e-6 N_U.
  double d_ref = 0.0;
  double theorem_gap = 0.0;  // min_dual - d_ref
  bool theorem_ok = false;
  std::vector<int> unbalanced;  // BS ids violating balance at termination
};

// Each user picks argmax_j (ln c_ij - mu_j), lowest id on ties.
Association user_step(const LinkTable& links, const std::vector<double>& mu);

// K_j = min(N_U, e^(mu_j - 1)).
double bs_supply_step(double mu_j, int n_users);

// mu_j - delta (K_j - demand_j).
double bs_price_step(double mu_j, double delta, double k_j, double demand_j);

// D(mu) = sum_i max_j (ln c_ij - mu_j) + sum_j K_j* (mu_j - ln K_j*).
double dual_objective(const LinkTable& links, const std::vector<double>& mu,
                      int n_users);

// delta = gamma (D_now - target) / ||grad||^2 with the target level
// min(best, D_now) - eps taken from the state. Positive whenever grad != 0.
double dynamic_stepsize(const DualState& state, const StepsizeParams& params,
                        double grad_norm_sq, double d_now);

// improved (new best dual value) -> rho eps; else max(beta eps, eps_min).
double epsilon_update(double eps, bool improved, const StepsizeParams& params);

// Full synchronous loop: user step, dual value, stepsize bookkeeping, supply
// and price updates, until per-BS balance |K_j - demand_j| <= 0.5, a plateau
// (best value unimproved by more than eps_min over 20 iterations), or
// max_iter. d_ref: reference optimum for the guarantee record; NaN computes
// it with solve_fua.
DualResult run_dual(const LinkTable& links, const StepsizeParams& params = {},
                    int max_iter = 500,
                    double d_ref = std::numeric_limits<double>::quiet_NaN());

// CSV: iter,dual_value,stepsize,epsilon,max_imbalance,primal_utility
void export_dual_trace_csv(const DualResult& result, const std::string& path);

}  // namespace hetsim

#endif  // HETSIM_DUAL_H_
