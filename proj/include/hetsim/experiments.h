// Copyright 2026 the hetsim authors.
// SPDX-License-Identifier: Apache-2.0
//
// Multi-seed comparisons of the association schemes, rate CDF metrics,
// bias-factor search and sweeps, report export.

#ifndef HETSIM_EXPERIMENTS_H_
#define HETSIM_EXPERIMENTS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "hetsim/association.h"
#include "hetsim/dual.h"
#include "hetsim/fua.h"
#include "hetsim/joint.h"
#include "hetsim/model.h"

namespace hetsim {

// Scheme names understood by run_comparison.
inline constexpr const char* kSchemeMaxSinr = "max_sinr";
inline constexpr const char* kSchemeFua = "fua";
inline constexpr const char* kSchemeRoundedFua = "rounded_fua";
inline constexpr const char* kSchemeDual = "dual";
inline constexpr const char* kSchemeJoint = "joint";
inline constexpr const char* kSchemeSinrBias = "sinr_bias";
inline constexpr const char* kSchemeRateBias = "rate_bias";

std::vector<std::string> all_schemes();

struct ExperimentConfig {
  ScenarioConfig scenario;
  std::vector<std::string> schemes;  // empty: summary-only report
  int trials = 20;
  std::uint64_t seed_base = 1000;
  double tol = -1.0;        // centralized solver tolerance; <= 0 auto
  int max_iter = 5000;      // centralized solver iteration cap
  StepsizeParams stepsize;  // dual solver parameters
  int dual_max_iter = 500;
  // Grid for sinr_bias_search, per non-macro tier, in dB.
  double bias_grid_db_min = 0.0;
  double bias_grid_db_max = 18.0;
  double bias_grid_db_step = 0.5;
  // Factors applied by the sinr_bias / rate_bias schemes.
  BiasConfig bias;
  std::string out_dir = "out";
};

struct SchemeMetrics {
  std::string name;
  double mean_utility = 0.0;              // mean over trials
  std::vector<double> trial_utility;      // per trial
  std::vector<double> tier_mean_load;     // per tier, mean over trials
  std::vector<double> rates;              // user rates pooled over trials
  std::vector<double> ratio_vs_baseline;  // at report.ratio_percentiles
  int n_not_converged = 0;
};

// One solver trace row for convergence.csv.
struct ConvergenceRow {
  std::string solver;
  int iter = 0;
  double value = 0.0;   // utility or dual value
  double extra = 0.0;   // fw gap or max imbalance
};

struct MetricsReport {
  ExperimentConfig config;
  int n_users = 0;
  std::vector<SchemeMetrics> schemes;
  std::vector<double> ratio_percentiles;  // defaults {10, 50}
  // Mean per-tier rate-bias factors derived from the dual prices, when the
  // dual scheme ran; tier 0 normalized to 1.
  std::vector<double> rate_bias_factors;
  std::vector<std::vector<double>> rate_bias_trials;  // per trial
  std::vector<ConvergenceRow> convergence;  // traces from the first trial
  // Bound-chain slack violations observed (empty when all trials satisfy
  // U_joint >= U_fua >= max(U_rounded, U_maxSINR) - 1e-6 N_U).
  std::vector<std::string> violations;
};

MetricsReport run_comparison(const ExperimentConfig& config);

struct QuantileTable {
  std::vector<double> percentile;
  std::vector<double> value;
};

// Empirical quantiles by linear interpolation between order statistics,
// default percentiles 1..99. Throws std::invalid_argument on empty input.
QuantileTable rate_cdf(const std::vector<double>& samples);
QuantileTable rate_cdf(const std::vector<double>& samples,
                       const std::vector<double>& percentiles);

double quantile(const std::vector<double>& samples, double percentile);

// quantile_p(scheme) / quantile_p(baseline). Throws std::domain_error when
// the baseline quantile is zero.
double rate_ratio_at_percentile(const std::vector<double>& scheme,
                                const std::vector<double>& baseline,
                                double percentile);

struct BiasSearchResult {
  BiasConfig bias;             // found factors (linear); tier 0 = 1
  std::vector<double> db;      // same factors in dB
  double mean_utility = 0.0;   // across trials
  double fua_gap = 0.0;        // reference utility - mean_utility
};

// Exhaustive grid search over per-tier dB factors maximizing the mean
// long-term-rate utility across trials; tier 0 pinned at 0 dB.
BiasSearchResult sinr_bias_search(const ExperimentConfig& config,
                                  double fua_utility_reference);

// Per-tier arithmetic mean of e^(-mu_j) over each tier's BSs, normalized so
// tier 0 maps to 1.
std::vector<double> rate_bias_from_dual(const std::vector<double>& mu,
                                        const std::vector<int>& bs_tier,
                                        int n_tiers);

struct SweepSpec {
  int tier = 1;                  // swept tier (> 0)
  std::string kind = "density";  // "density" (count multiplier) or "power"
  std::vector<double> values;    // multipliers, or dBm for "power"
  bool include_sinr_search = false;
};

struct SweepPoint {
  double value = 0.0;
  std::vector<double> rate_bias;      // per tier, mean over trials
  std::vector<double> sinr_bias_db;   // only when include_sinr_search
};

struct SweepReport {
  SweepSpec spec;
  std::vector<SweepPoint> points;
};

SweepReport bias_sweep(const ExperimentConfig& config, const SweepSpec& spec);

// Writes loads.csv, cdf.csv, ratios.csv, convergence.csv, bias.csv and
// summary.txt into dir; bytes are stable across reruns with equal inputs.
void export_report(const MetricsReport& report, const std::string& dir);

void export_sweep_csv(const SweepReport& report, const std::string& path);

}  // namespace hetsim

#endif  // HETSIM_EXPERIMENTS_H_
