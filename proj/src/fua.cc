// Copyright 2026 the hetsim authors.
// SPDX-License-Identifier: Apache-2.0

#include "hetsim/fua.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "hetsim/csv.h"

namespace hetsim {

namespace {

constexpr double kLoadFloor = 1e-12;  // empty-BS threshold in the gradient

double k_ln_k(double k) { return k > 1e-300 ? k * std::log(k) : 0.0; }

// Exact maximizer of the objective over user i's simplex with all other
// rows fixed. With K^-i = K - x_i, the row problem is
//   max sum_j x_j ln c_j - sum_j (K^-i_j + x_j) ln(K^-i_j + x_j)
// whose KKT solution is x_j = max(0, theta c_j - K^-i_j), the waterline
// theta = (1 + S_A)/C_A found by scanning breakpoints b_j = K^-i_j / c_j in
// ascending order (S_A, C_A: sums of K^-i_j and c_j over the active set).
void row_update(const LinkTable& links, Table& x, std::vector<double>& k,
                int i, std::vector<double>& b, std::vector<int>& order) {
  const int nb = x.cols;
  for (int j = 0; j < nb; ++j) {
    const double kmi = std::max(k[j] - x(i, j), 0.0);
    k[j] = kmi;  // holds K^-i during the update
    b[j] = kmi / links.rate(i, j);
  }
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int c) { return b[a] < b[c]; });
  double s = 0.0;
  double csum = 0.0;
  double theta = 0.0;
  for (int r = 0; r < nb; ++r) {
    const int j = order[r];
    s += k[j];
    csum += links.rate(i, j);
    theta = (1.0 + s) / csum;
    if (r + 1 < nb && theta > b[order[r + 1]]) continue;
    break;
  }
  double row_sum = 0.0;
  for (int j = 0; j < nb; ++j) {
    const double v = std::max(0.0, theta * links.rate(i, j) - k[j]);
    x(i, j) = v;
    row_sum += v;
  }
  for (int j = 0; j < nb; ++j) {
    x(i, j) /= row_sum;  // row_sum = 1 up to roundoff
    k[j] += x(i, j);
  }
}

}  // namespace

double fua_objective(const LinkTable& links, const Association& x) {
  double util = 0.0;
  std::vector<double> k(x.x.cols, 0.0);
  for (int i = 0; i < x.x.rows; ++i) {
    for (int j = 0; j < x.x.cols; ++j) {
      const double w = x.x(i, j);
      if (w > 0.0) util += w * links.ln_rate(i, j);
      k[j] += w;
    }
  }
  for (double kj : k) util -= k_ln_k(kj);
  return util;
}

Table fua_gradient(const LinkTable& links, const Association& x) {
  const std::vector<double> k = loads(x);
  Table g(x.x.rows, x.x.cols);
  for (int j = 0; j < x.x.cols; ++j) {
    const double lnk = std::log(std::max(k[j], kLoadFloor));
    for (int i = 0; i < x.x.rows; ++i) {
      g(i, j) = links.ln_rate(i, j) - lnk - 1.0;
    }
  }
  return g;
}

Association fw_linear_oracle(const Table& gradient) {
  std::vector<int> choice(gradient.rows, 0);
  for (int i = 0; i < gradient.rows; ++i) {
    double best = gradient(i, 0);
    for (int j = 1; j < gradient.cols; ++j) {
      if (gradient(i, j) > best) {
        best = gradient(i, j);
        choice[i] = j;
      }
    }
  }
  return association_from_choices(choice, gradient.cols);
}

double fw_gap(const LinkTable& links, const Association& x) {
  const Table g = fua_gradient(links, x);
  double gap = 0.0;
  for (int i = 0; i < g.rows; ++i) {
    double best = g(i, 0);
    double dot = 0.0;
    for (int j = 0; j < g.cols; ++j) {
      if (g(i, j) > best) best = g(i, j);
      dot += g(i, j) * x.x(i, j);
    }
    gap += best - dot;
  }
  return gap;
}

FuaSolution solve_fua(const LinkTable& links, double tol, int max_iter) {
  const int nu = links.n_users();
  const int nb = links.n_bs();
  if (tol <= 0.0) tol = 1e-6 * nu;

  FuaSolution sol;
  sol.x = max_sinr_assoc(links);
  sol.x.integer = false;
  std::vector<double> k = loads(sol.x);
  std::vector<double> b(nb);
  std::vector<int> order(nb);

  for (int sweep = 1; sweep <= max_iter; ++sweep) {
    for (int i = 0; i < nu; ++i) row_update(links, sol.x.x, k, i, b, order);
    // Refresh the loads from scratch; the incremental updates drift.
    k = loads(sol.x);
    sol.iters = sweep;
    sol.gap = fw_gap(links, sol.x);
    sol.utility = fua_objective(links, sol.x);
    sol.trace.push_back({sweep, sol.utility, sol.gap});
    if (sol.gap <= tol) {
      sol.converged = true;
      break;
    }
  }
  return sol;
}

BruteForceSolution brute_force_optimal(const LinkTable& links,
                                       double enumeration_cap) {
  const int nu = links.n_users();
  const int nb = links.n_bs();
  const double total = std::pow(static_cast<double>(nb), nu);
  if (total > enumeration_cap) {
    throw std::domain_error("brute_force_optimal: N_B^N_U exceeds the cap");
  }

  std::vector<int> a(nu, 0);
  std::vector<int> best_a = a;
  std::vector<double> k(nb, 0.0);
  double best_util = -std::numeric_limits<double>::infinity();
  long long enumerated = 0;
  while (true) {
    ++enumerated;
    std::fill(k.begin(), k.end(), 0.0);
    double util = 0.0;
    for (int i = 0; i < nu; ++i) {
      util += links.ln_rate(i, a[i]);
      k[a[i]] += 1.0;
    }
    for (int j = 0; j < nb; ++j) util -= k_ln_k(k[j]);
    if (util > best_util) {
      best_util = util;
      best_a = a;
    }
    // Odometer: rightmost index fastest, so the first maximizer found is
    // the lexicographically smallest.
    int pos = nu - 1;
    while (pos >= 0 && a[pos] == nb - 1) a[pos--] = 0;
    if (pos < 0) break;
    ++a[pos];
  }

  BruteForceSolution out;
  out.assoc = association_from_choices(best_a, nb);
  out.utility = best_util;
  out.enumerated = enumerated;
  return out;
}

GapReport fua_gap_report(const FuaSolution& sol, const Association& integer,
                         const LinkTable& links) {
  GapReport r;
  r.fua_utility = sol.utility;
  r.integer_utility = fua_objective(links, integer);
  r.gap = r.fua_utility - r.integer_utility;
  r.geo_mean_ratio = std::exp(r.gap / links.n_users());
  return r;
}

void export_fua_trace_csv(const FuaSolution& sol, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "iter,utility,fw_gap\n";
  for (const FuaTracePoint& p : sol.trace) {
    out << p.iter << ',' << fmt(p.utility) << ',' << fmt(p.fw_gap) << '\n';
  }
}

}  // namespace hetsim
