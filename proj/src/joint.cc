// Copyright 2026 the hetsim authors.
// SPDX-License-Identifier: Apache-2.0

#include "hetsim/joint.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hetsim/csv.h"

namespace hetsim {

namespace {

std::vector<double> aggregate_rates(const LinkTable& links, const Table& y) {
  std::vector<double> r(y.rows, 0.0);
  for (int i = 0; i < y.rows; ++i) {
    for (int j = 0; j < y.cols; ++j) {
      if (y(i, j) > 0.0) r[i] += y(i, j) * links.rate(i, j);
    }
  }
  return r;
}

// Exact maximizer over BS j's capped simplex with all other columns fixed.
// With R^-j_i = R_i - y_ij c_ij, the column problem is
//   max sum_i ln(R^-j_i + y_i c_ij)  s.t.  sum_i y_i <= 1, y >= 0,
// and since every gradient entry is positive the budget binds. KKT gives
// y_i = max(0, t - b_i) with b_i = R^-j_i / c_ij and waterline
// t = (1 + S_A)/|A| over the active set, found by an ascending scan of b.
void column_update(const LinkTable& links, Table& y, std::vector<double>& r,
                   int j, std::vector<double>& b, std::vector<int>& order) {
  const int nu = y.rows;
  for (int i = 0; i < nu; ++i) {
    const double rmj = std::max(r[i] - y(i, j) * links.rate(i, j), 0.0);
    r[i] = rmj;  // holds R^-j during the update
    b[i] = rmj / links.rate(i, j);
  }
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int c) { return b[a] < b[c]; });
  double s = 0.0;
  double t = 0.0;
  for (int r_idx = 0; r_idx < nu; ++r_idx) {
    s += b[order[r_idx]];
    t = (1.0 + s) / (r_idx + 1);
    if (r_idx + 1 < nu && t > b[order[r_idx + 1]]) continue;
    break;
  }
  double col_sum = 0.0;
  for (int i = 0; i < nu; ++i) {
    const double v = std::max(0.0, t - b[i]);
    y(i, j) = v;
    col_sum += v;
  }
  for (int i = 0; i < nu; ++i) {
    y(i, j) /= col_sum;  // col_sum = 1 up to roundoff
    r[i] += y(i, j) * links.rate(i, j);
  }
}

}  // namespace

double joint_objective(const LinkTable& links, const Table& y) {
  double util = 0.0;
  for (double r : aggregate_rates(links, y)) util += std::log(r);
  return util;
}

Table joint_gradient(const LinkTable& links, const Table& y) {
  const std::vector<double> r = aggregate_rates(links, y);
  Table g(y.rows, y.cols);
  for (int i = 0; i < y.rows; ++i) {
    for (int j = 0; j < y.cols; ++j) {
      g(i, j) = links.rate(i, j) / r[i];
    }
  }
  return g;
}

JointSolution solve_joint(const LinkTable& links, double tol, int max_iter) {
  const int nu = links.n_users();
  const int nb = links.n_bs();
  if (tol <= 0.0) tol = 1e-6 * nu;

  JointSolution sol;
  // Max-SINR start with each occupied BS's budget split equally over its
  // users; keeps every aggregate rate positive.
  const Association ms = max_sinr_assoc(links);
  const std::vector<double> k = loads(ms);
  sol.y = Table(nu, nb);
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nb; ++j) {
      if (ms.x(i, j) > 0.0) sol.y(i, j) = ms.x(i, j) / std::max(k[j], 1.0);
    }
  }
  std::vector<double> r = aggregate_rates(links, sol.y);
  for (int i = 0; i < nu; ++i) {
    if (r[i] > 0.0) continue;
    // Unreachable with the default start; repair a degenerate custom state.
    for (int j = 0; j < nb; ++j) sol.y(i, j) += 1e-6;
    r = aggregate_rates(links, sol.y);
  }

  std::vector<double> b(nu);
  std::vector<int> order(nu);
  for (int sweep = 1; sweep <= max_iter; ++sweep) {
    for (int j = 0; j < nb; ++j) column_update(links, sol.y, r, j, b, order);
    r = aggregate_rates(links, sol.y);  // clear incremental drift
    // Frank-Wolfe gap over the product of capped simplices: per BS, the
    // best vertex puts the whole budget on the largest gradient entry.
    double gap = 0.0;
    for (int j = 0; j < nb; ++j) {
      double best = 0.0;
      double dot = 0.0;
      for (int i = 0; i < nu; ++i) {
        const double g = links.rate(i, j) / r[i];
        best = std::max(best, g);
        dot += g * sol.y(i, j);
      }
      gap += best - dot;
    }
    sol.iters = sweep;
    sol.gap = gap;
    if (gap <= tol) {
      sol.converged = true;
      break;
    }
  }
  sol.rate = aggregate_rates(links, sol.y);
  sol.utility = 0.0;
  for (double ri : sol.rate) sol.utility += std::log(ri);
  return sol;
}

BoundReport joint_dominates(const JointSolution& joint,
                            const FuaSolution& fua) {
  BoundReport r;
  r.joint_utility = joint.utility;
  r.fua_utility = fua.utility;
  r.gap = joint.utility - fua.utility;
  const int nu = joint.y.rows;
  r.geo_mean_ratio = std::exp(r.gap / nu);
  if (r.gap < -1e-6) {
    throw std::logic_error("joint bound below the fractional optimum");
  }
  return r;
}

void export_joint_csv(const JointSolution& sol, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "user_id,bs_id,y,rate_i\n";
  for (int i = 0; i < sol.y.rows; ++i) {
    for (int j = 0; j < sol.y.cols; ++j) {
      if (sol.y(i, j) > 0.0) {
        out << i << ',' << j << ',' << fmt(sol.y(i, j)) << ','
            << fmt(sol.rate[i]) << '\n';
      }
    }
  }
}

}  // namespace hetsim
