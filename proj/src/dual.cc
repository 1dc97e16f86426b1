// Copyright 2026 the hetsim authors.
// SPDX-License-Identifier: Apache-2.0

#include "hetsim/dual.h"

#include <cmath>
#include <stdexcept>

#include "hetsim/csv.h"
#include "hetsim/fua.h"

namespace hetsim {

namespace {

constexpr double kBalanceTol = 0.5;    // users per BS
constexpr int kPlateauWindow = 20;     // iterations without real improvement
const double kMuFloor = 1.0 + std::log(1e-6);  // keeps supply positive

void validate(const StepsizeParams& p) {
  if (!(p.gamma > 0.0 && p.gamma < 2.0)) {
    throw std::invalid_argument("stepsize: gamma must be in (0, 2)");
  }
  if (!(p.beta > 0.0 && p.beta < 1.0)) {
    throw std::invalid_argument("stepsize: beta must be in (0, 1)");
  }
  if (!(p.rho > 1.0)) {
    throw std::invalid_argument("stepsize: rho must be > 1");
  }
  if (p.eps_init > 0.0 && p.eps_min > 0.0 && p.eps_min > p.eps_init) {
    throw std::invalid_argument("stepsize: eps_min must be <= eps_init");
  }
}

}  // namespace

Association user_step(const LinkTable& links, const std::vector<double>& mu) {
  const int nu = links.n_users();
  const int nb = links.n_bs();
  std::vector<int> choice(nu, 0);
  for (int i = 0; i < nu; ++i) {
    double best = links.ln_rate(i, 0) - mu[0];
    for (int j = 1; j < nb; ++j) {
      const double s = links.ln_rate(i, j) - mu[j];
      if (s > best) {
        best = s;
        choice[i] = j;
      }
    }
  }
  return association_from_choices(choice, nb);
}

double bs_supply_step(double mu_j, int n_users) {
  return std::min(static_cast<double>(n_users), std::exp(mu_j - 1.0));
}

double bs_price_step(double mu_j, double delta, double k_j, double demand_j) {
  return mu_j - delta * (k_j - demand_j);
}

double dual_objective(const LinkTable& links, const std::vector<double>& mu,
                      int n_users) {
  const int nu = links.n_users();
  const int nb = links.n_bs();
  double f = 0.0;
  for (int i = 0; i < nu; ++i) {
    double best = links.ln_rate(i, 0) - mu[0];
    for (int j = 1; j < nb; ++j) {
      best = std::max(best, links.ln_rate(i, j) - mu[j]);
    }
    f += best;
  }
  double g = 0.0;
  for (int j = 0; j < nb; ++j) {
    const double k = bs_supply_step(mu[j], n_users);
    g += k * (mu[j] - std::log(k));
  }
  return f + g;
}

double dynamic_stepsize(const DualState& state, const StepsizeParams& params,
                        double grad_norm_sq, double d_now) {
  if (grad_norm_sq <= 0.0) return 0.0;  // zero subgradient: optimum reached
  const double target = std::min(state.best, d_now) - state.eps;
  return params.gamma * (d_now - target) / grad_norm_sq;
}

double epsilon_update(double eps, bool improved,
                      const StepsizeParams& params) {
  return improved ? params.rho * eps : std::max(params.beta * eps,
                                                params.eps_min);
}

DualResult run_dual(const LinkTable& links, const StepsizeParams& params,
                    int max_iter, double d_ref) {
  validate(params);
  const int nu = links.n_users();
  const int nb = links.n_bs();

  StepsizeParams p = params;
  if (p.eps_min <= 0.0) p.eps_min = 1e-3 * nu;

  DualResult res;
  DualState& st = res.state;
  st.mu.assign(nb, 1.0 + std::log(static_cast<double>(nu) / nb));
  st.supply.assign(nb, 0.0);
  st.demand.assign(nb, 0.0);
  st.best = std::numeric_limits<double>::infinity();
  res.min_dual = std::numeric_limits<double>::infinity();

  std::vector<double> grad(nb);
  int best_age = 0;

  for (int t = 0; t < max_iter; ++t) {
    st.t = t;
    res.assoc = user_step(links, st.mu);
    st.demand = loads(res.assoc);
    for (int j = 0; j < nb; ++j) st.supply[j] = bs_supply_step(st.mu[j], nu);
    const double d_now = dual_objective(links, st.mu, nu);

    if (t == 0) {
      st.eps = p.eps_init > 0.0 ? p.eps_init
                                : std::max(1.0, 0.1 * std::fabs(d_now));
    } else {
      st.eps = epsilon_update(st.eps, d_now <= st.best, p);
    }
    best_age = d_now < st.best - p.eps_min ? 0 : best_age + 1;
    st.best = std::min(st.best, d_now);
    res.min_dual = std::min(res.min_dual, d_now);

    double grad_norm_sq = 0.0;
    double imbalance = 0.0;
    for (int j = 0; j < nb; ++j) {
      grad[j] = st.supply[j] - st.demand[j];
      grad_norm_sq += grad[j] * grad[j];
      imbalance = std::max(imbalance, std::fabs(grad[j]));
    }

    const double delta = dynamic_stepsize(st, p, grad_norm_sq, d_now);
    res.trace.push_back({t, d_now, delta, st.eps, imbalance,
                         fua_objective(links, res.assoc)});
    res.iters = t + 1;

    if (imbalance <= kBalanceTol || grad_norm_sq == 0.0) {
      res.converged = true;
      break;
    }
    if (best_age >= kPlateauWindow) {
      res.plateaued = true;
      break;
    }
    for (int j = 0; j < nb; ++j) {
      st.mu[j] =
          std::max(bs_price_step(st.mu[j], delta, st.supply[j], st.demand[j]),
                   kMuFloor);
    }
  }

  for (int j = 0; j < nb; ++j) {
    if (std::fabs(st.supply[j] - st.demand[j]) > kBalanceTol) {
      res.unbalanced.push_back(j);
    }
  }
  if (std::isnan(d_ref)) {
    d_ref = solve_fua(links, 1e-9 * nu, 5000).utility;
  }
  res.d_ref = d_ref;
  res.theorem_gap = res.min_dual - d_ref;
  res.theorem_ok = res.min_dual <= d_ref + p.eps_min + 1e-6 * nu;
  return res;
}

void export_dual_trace_csv(const DualResult& result, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "iter,dual_value,stepsize,epsilon,max_imbalance,primal_utility\n";
  for (const DualTracePoint& p : result.trace) {
    out << p.iter << ',' << fmt(p.dual_value) << ',' << fmt(p.stepsize) << ','
        << fmt(p.epsilon) << ',' << fmt(p.max_imbalance) << ','
        << fmt(p.primal_utility) << '\n';
  }
}

}  // namespace hetsim
