// Copyright 2026 the hetsim authors.
// SPDX-License-Identifier: Apache-2.0
//
// Joint multi-BS association bound:
//
//   maximize  sum_i ln(sum_j y_ij c_ij)   s.t.  sum_i y_ij <= 1, y >= 0.
//
// Like the fractional solver, the mover is exact block-coordinate ascent
// (per-BS column waterfilling) and the certificate is the Frank-Wolfe gap
// over the product of capped per-BS simplices.

#ifndef HETSIM_JOINT_H_
#define HETSIM_JOINT_H_

#include <string>
#include <vector>

#include "hetsim/association.h"
#include "hetsim/fua.h"
#include "hetsim/linktable.h"

namespace hetsim {

struct JointSolution {
  Table y;                    // N_U x N_B allocation
  std::vector<double> rate;   // R_i = sum_j y_ij c_ij
  double utility = 0.0;       // sum_i ln R_i
  double gap = 0.0;           // final Frank-Wolfe gap
  int iters = 0;
  bool converged = false;
};

double joint_objective(const LinkTable& links, const Table& y);

// Gradient entry: c_ij / R_i.
Table joint_gradient(const LinkTable& links, const Table& y);

// tol <= 0 selects 1e-6 * N_U. Starts from the max-SINR association with
// each occupied BS's budget split equally across its users, which keeps
// every R_i positive.
JointSolution solve_joint(const LinkTable& links, double tol = -1.0,
                          int max_iter = 5000);

struct BoundReport {
  double joint_utility = 0.0;
  double fua_utility = 0.0;
  double gap = 0.0;             // U_joint - U_fua, nonnegative
  double geo_mean_ratio = 1.0;  // exp(gap / N_U)
};

// Throws std::logic_error if U_joint < U_fua - 1e-6 (the bound would be
// violated, which indicates a solver defect).
BoundReport joint_dominates(const JointSolution& joint,
                            const FuaSolution& fua);

// CSV: user_id,bs_id,y,rate_i (nonzero entries only).
void export_joint_csv(const JointSolution& sol, const std::string& path);

}  // namespace hetsim

#endif  // HETSIM_JOINT_H_
