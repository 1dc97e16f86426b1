// Copyright 2026 the hetsim authors.
// SPDX-License-Identifier: Apache-2.0

#include "hetsim/experiments.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hetsim/csv.h"
#include "hetsim/topology.h"

namespace hetsim {

namespace {

const std::vector<double> kRatioPercentiles = {10.0, 50.0};

bool has_scheme(const ExperimentConfig& cfg, const std::string& name) {
  return std::find(cfg.schemes.begin(), cfg.schemes.end(), name) !=
         cfg.schemes.end();
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) {
    throw std::invalid_argument("experiment: trials must be >= 1");
  }
  if (cfg.bias_grid_db_step <= 0.0) {
    throw std::invalid_argument("experiment: bias grid step must be > 0");
  }
  const std::vector<std::string> known = all_schemes();
  for (const std::string& s : cfg.schemes) {
    if (std::find(known.begin(), known.end(), s) == known.end()) {
      throw std::invalid_argument("experiment: unknown scheme '" + s + "'");
    }
  }
}

BiasConfig resolve_bias(const ExperimentConfig& cfg, int n_tiers) {
  BiasConfig b = cfg.bias;
  if (b.sinr_factors.empty()) b.sinr_factors.assign(n_tiers, 1.0);
  if (b.rate_factors.empty()) b.rate_factors.assign(n_tiers, 1.0);
  return b;
}

std::vector<double> tier_loads(const std::vector<double>& k,
                               const std::vector<int>& bs_tier, int n_tiers) {
  std::vector<double> out(n_tiers, 0.0);
  for (std::size_t j = 0; j < k.size(); ++j) out[bs_tier[j]] += k[j];
  return out;
}

}  // namespace

std::vector<std::string> all_schemes() {
  return {kSchemeMaxSinr,  kSchemeFua,      kSchemeRoundedFua, kSchemeDual,
          kSchemeJoint,    kSchemeSinrBias, kSchemeRateBias};
}

double quantile(const std::vector<double>& samples, double percentile) {
  if (samples.empty()) {
    throw std::invalid_argument("quantile: empty sample set");
  }
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const double h = (sorted.size() - 1) * percentile / 100.0;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

QuantileTable rate_cdf(const std::vector<double>& samples,
                       const std::vector<double>& percentiles) {
  QuantileTable t;
  for (double p : percentiles) {
    t.percentile.push_back(p);
    t.value.push_back(quantile(samples, p));
  }
  return t;
}

QuantileTable rate_cdf(const std::vector<double>& samples) {
  std::vector<double> ps;
  for (int p = 1; p <= 99; ++p) ps.push_back(p);
  return rate_cdf(samples, ps);
}

double rate_ratio_at_percentile(const std::vector<double>& scheme,
                                const std::vector<double>& baseline,
                                double percentile) {
  const double qs = quantile(scheme, percentile);
  const double qb = quantile(baseline, percentile);
  if (qb == 0.0) {
    throw std::domain_error("rate_ratio_at_percentile: zero baseline");
  }
  return qs / qb;
}

std::vector<double> rate_bias_from_dual(const std::vector<double>& mu,
                                        const std::vector<int>& bs_tier,
                                        int n_tiers) {
  std::vector<double> sum(n_tiers, 0.0);
  std::vector<int> count(n_tiers, 0);
  for (std::size_t j = 0; j < mu.size(); ++j) {
    sum[bs_tier[j]] += std::exp(-mu[j]);
    ++count[bs_tier[j]];
  }
  std::vector<double> factors(n_tiers, 0.0);
  const double ref = count[0] > 0 ? sum[0] / count[0] : 1.0;
  for (int t = 0; t < n_tiers; ++t) {
    if (count[t] > 0) factors[t] = (sum[t] / count[t]) / ref;
  }
  return factors;
}

MetricsReport run_comparison(const ExperimentConfig& config) {
  validate(config);
  const int n_tiers = static_cast<int>(config.scenario.tiers.size());
  const BiasConfig bias = resolve_bias(config, n_tiers);

  MetricsReport report;
  report.config = config;
  report.ratio_percentiles = kRatioPercentiles;
  for (const std::string& name : config.schemes) {
    SchemeMetrics sm;
    sm.name = name;
    sm.tier_mean_load.assign(n_tiers, 0.0);
    report.schemes.push_back(sm);
  }

  const bool want_fua = has_scheme(config, kSchemeFua) ||
                        has_scheme(config, kSchemeRoundedFua) ||
                        has_scheme(config, kSchemeJoint) ||
                        has_scheme(config, kSchemeDual);

  for (int trial = 0; trial < config.trials; ++trial) {
    const std::uint64_t seed = config.seed_base + trial;
    const Scenario sc = generate_scenario(config.scenario, seed);
    const LinkTable links = compute_link_table(sc);
    report.n_users = links.n_users();
    const double slack = 1e-6 * links.n_users();

    FuaSolution fua;
    if (want_fua) fua = solve_fua(links, config.tol, config.max_iter);

    DualResult dual;
    const bool want_dual = has_scheme(config, kSchemeDual);
    if (want_dual) {
      dual = run_dual(links, config.stepsize, config.dual_max_iter,
                      fua.utility);
      report.rate_bias_trials.push_back(
          rate_bias_from_dual(dual.state.mu, links.bs_tier, n_tiers));
    }

    JointSolution joint;
    if (has_scheme(config, kSchemeJoint)) {
      joint = solve_joint(links, config.tol, config.max_iter);
    }

    for (SchemeMetrics& sm : report.schemes) {
      Association assoc;
      double utility = 0.0;
      std::vector<double> rates;
      bool converged = true;
      bool has_loads = true;
      if (sm.name == kSchemeMaxSinr) {
        assoc = max_sinr_assoc(links);
      } else if (sm.name == kSchemeFua) {
        assoc = fua.x;
        converged = fua.converged;
      } else if (sm.name == kSchemeRoundedFua) {
        assoc = round_fractional(fua.x);
        converged = fua.converged;
      } else if (sm.name == kSchemeDual) {
        assoc = dual.assoc;
        converged = dual.converged;
      } else if (sm.name == kSchemeJoint) {
        utility = joint.utility;
        rates = joint.rate;
        converged = joint.converged;
        has_loads = false;
      } else if (sm.name == kSchemeSinrBias) {
        assoc = biased_sinr_assoc(links, bias);
      } else if (sm.name == kSchemeRateBias) {
        assoc = biased_rate_assoc(links, bias);
      }
      if (has_loads) {
        const RateOutcome ro = long_term_rates(assoc, links);
        rates = ro.rate;
        // Canonical utility: the solver objective for the fractional
        // relaxation, the realized log-utility otherwise (they agree on
        // integer associations).
        utility = sm.name == kSchemeFua ? fua.utility : ro.utility;
        const std::vector<double> tl =
            tier_loads(loads(assoc), links.bs_tier, n_tiers);
        for (int t = 0; t < n_tiers; ++t) sm.tier_mean_load[t] += tl[t];
      }
      sm.trial_utility.push_back(utility);
      sm.rates.insert(sm.rates.end(), rates.begin(), rates.end());
      if (!converged) ++sm.n_not_converged;
    }

    // Bound chain with solver-tolerance slack.
    auto check = [&](const char* hi_name, double hi, const char* lo_name,
                     double lo) {
      if (hi < lo - slack) {
        std::ostringstream msg;
        msg << "trial " << trial << ": U_" << hi_name << " = " << hi
            << " < U_" << lo_name << " = " << lo;
        report.violations.push_back(msg.str());
      }
    };
    if (want_fua) {
      const double u_ms = fua_objective(links, max_sinr_assoc(links));
      check("fua", fua.utility, "max_sinr", u_ms);
      const double u_rounded = fua_objective(links, round_fractional(fua.x));
      check("fua", fua.utility, "rounded_fua", u_rounded);
      if (has_scheme(config, kSchemeJoint)) {
        check("joint", joint.utility, "fua", fua.utility);
      }
    }

    if (trial == 0) {
      if (want_fua) {
        for (const FuaTracePoint& p : fua.trace) {
          report.convergence.push_back({"fua", p.iter, p.utility, p.fw_gap});
        }
      }
      if (want_dual) {
        for (const DualTracePoint& p : dual.trace) {
          report.convergence.push_back(
              {"dual", p.iter, p.dual_value, p.max_imbalance});
        }
      }
      if (has_scheme(config, kSchemeJoint)) {
        report.convergence.push_back(
            {"joint", joint.iters, joint.utility, joint.gap});
      }
    }
  }

  for (SchemeMetrics& sm : report.schemes) {
    for (double u : sm.trial_utility) sm.mean_utility += u;
    sm.mean_utility /= config.trials;
    for (double& l : sm.tier_mean_load) l /= config.trials;
  }
  if (!report.rate_bias_trials.empty()) {
    report.rate_bias_factors.assign(n_tiers, 0.0);
    for (const std::vector<double>& b : report.rate_bias_trials) {
      for (int t = 0; t < n_tiers; ++t) report.rate_bias_factors[t] += b[t];
    }
    for (double& f : report.rate_bias_factors) {
      f /= report.rate_bias_trials.size();
    }
  }
  const SchemeMetrics* baseline = nullptr;
  for (const SchemeMetrics& sm : report.schemes) {
    if (sm.name == kSchemeMaxSinr) baseline = &sm;
  }
  if (baseline != nullptr && !baseline->rates.empty()) {
    for (SchemeMetrics& sm : report.schemes) {
      for (double p : report.ratio_percentiles) {
        sm.ratio_vs_baseline.push_back(
            rate_ratio_at_percentile(sm.rates, baseline->rates, p));
      }
    }
  }
  return report;
}

BiasSearchResult sinr_bias_search(const ExperimentConfig& config,
                                  double fua_utility_reference) {
  validate(config);
  const int n_tiers = static_cast<int>(config.scenario.tiers.size());

  std::vector<LinkTable> links;
  for (int trial = 0; trial < config.trials; ++trial) {
    links.push_back(compute_link_table(
        generate_scenario(config.scenario, config.seed_base + trial)));
  }

  std::vector<double> grid;
  for (double db = config.bias_grid_db_min;
       db <= config.bias_grid_db_max + 1e-12; db += config.bias_grid_db_step) {
    grid.push_back(db);
  }

  BiasSearchResult best;
  best.mean_utility = -std::numeric_limits<double>::infinity();
  std::vector<int> idx(n_tiers, 0);  // odometer over tiers 1..n-1
  while (true) {
    BiasConfig bias = unit_bias(n_tiers);
    std::vector<double> db(n_tiers, 0.0);
    for (int t = 1; t < n_tiers; ++t) {
      db[t] = grid[idx[t]];
      bias.sinr_factors[t] = std::pow(10.0, db[t] / 10.0);
    }
    double mean = 0.0;
    for (const LinkTable& lt : links) {
      mean += long_term_rates(biased_sinr_assoc(lt, bias), lt).utility;
    }
    mean /= links.size();
    if (mean > best.mean_utility) {
      best.mean_utility = mean;
      best.bias = bias;
      best.db = db;
    }
    int t = n_tiers - 1;
    while (t >= 1 && idx[t] + 1 == static_cast<int>(grid.size())) idx[t--] = 0;
    if (t < 1) break;
    ++idx[t];
  }
  best.fua_gap = fua_utility_reference - best.mean_utility;
  return best;
}

SweepReport bias_sweep(const ExperimentConfig& config, const SweepSpec& spec) {
  validate(config);
  const int n_tiers = static_cast<int>(config.scenario.tiers.size());
  if (spec.tier < 1 || spec.tier >= n_tiers) {
    throw std::invalid_argument("sweep: tier must name a small-cell tier");
  }
  if (spec.values.empty()) {
    throw std::invalid_argument("sweep: no values given");
  }
  if (spec.kind != "density" && spec.kind != "power") {
    throw std::invalid_argument("sweep: kind must be 'density' or 'power'");
  }

  SweepReport report;
  report.spec = spec;
  for (double value : spec.values) {
    ExperimentConfig point_cfg = config;
    TierConfig& tier = point_cfg.scenario.tiers[spec.tier];
    if (spec.kind == "density") {
      if (tier.density >= 0.0) {
        tier.density *= value;
      } else {
        tier.count_per_macro =
            static_cast<int>(std::lround(tier.count_per_macro * value));
      }
    } else {
      tier.power_dbm = value;
    }

    SweepPoint point;
    point.value = value;
    point.rate_bias.assign(n_tiers, 0.0);
    for (int trial = 0; trial < config.trials; ++trial) {
      const Scenario sc =
          generate_scenario(point_cfg.scenario, config.seed_base + trial);
      const LinkTable lt = compute_link_table(sc);
      const DualResult dual =
          run_dual(lt, config.stepsize, config.dual_max_iter);
      const std::vector<double> b =
          rate_bias_from_dual(dual.state.mu, lt.bs_tier, n_tiers);
      for (int t = 0; t < n_tiers; ++t) point.rate_bias[t] += b[t];
    }
    for (double& b : point.rate_bias) b /= config.trials;
    if (spec.include_sinr_search) {
      point.sinr_bias_db = sinr_bias_search(point_cfg, 0.0).db;
    }
    report.points.push_back(point);
  }
  return report;
}

void export_report(const MetricsReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto path = [&](const char* name) {
    return (std::filesystem::path(dir) / name).string();
  };

  {
    std::ofstream out = open_out(path("loads.csv"));
    out << "scheme,tier,mean_load\n";
    for (const SchemeMetrics& sm : report.schemes) {
      if (sm.name == kSchemeJoint) continue;  // allocations, not loads
      for (std::size_t t = 0; t < sm.tier_mean_load.size(); ++t) {
        out << sm.name << ',' << t + 1 << ',' << fmt(sm.tier_mean_load[t])
            << '\n';
      }
    }
  }
  {
    std::ofstream out = open_out(path("cdf.csv"));
    out << "percentile";
    for (const SchemeMetrics& sm : report.schemes) out << ',' << sm.name;
    out << '\n';
    std::vector<QuantileTable> tables;
    for (const SchemeMetrics& sm : report.schemes) {
      tables.push_back(rate_cdf(sm.rates));
    }
    if (!tables.empty()) {
      for (std::size_t r = 0; r < tables[0].percentile.size(); ++r) {
        out << fmt(tables[0].percentile[r]);
        for (const QuantileTable& t : tables) out << ',' << fmt(t.value[r]);
        out << '\n';
      }
    }
  }
  {
    std::ofstream out = open_out(path("ratios.csv"));
    out << "scheme,percentile,ratio_vs_max_sinr\n";
    for (const SchemeMetrics& sm : report.schemes) {
      for (std::size_t k = 0; k < sm.ratio_vs_baseline.size(); ++k) {
        out << sm.name << ',' << fmt(report.ratio_percentiles[k]) << ','
            << fmt(sm.ratio_vs_baseline[k]) << '\n';
      }
    }
  }
  {
    std::ofstream out = open_out(path("convergence.csv"));
    out << "solver,iter,value,gap_or_imbalance\n";
    for (const ConvergenceRow& row : report.convergence) {
      out << row.solver << ',' << row.iter << ',' << fmt(row.value) << ','
          << fmt(row.extra) << '\n';
    }
  }
  {
    std::ofstream out = open_out(path("bias.csv"));
    out << "tier,sinr_factor,rate_factor,rate_bias_from_dual\n";
    const BiasConfig bias = resolve_bias(
        report.config, static_cast<int>(report.config.scenario.tiers.size()));
    for (std::size_t t = 0; t < bias.sinr_factors.size(); ++t) {
      const double from_dual = t < report.rate_bias_factors.size()
                                   ? report.rate_bias_factors[t]
                                   : 0.0;
      out << t + 1 << ',' << fmt(bias.sinr_factors[t]) << ','
          << fmt(bias.rate_factors[t]) << ',' << fmt(from_dual) << '\n';
    }
  }
  {
    std::ofstream out = open_out(path("summary.txt"));
    out << "trials: " << report.config.trials << '\n';
    out << "seed_base: " << report.config.seed_base << '\n';
    out << "users: " << report.n_users << '\n';
    for (const SchemeMetrics& sm : report.schemes) {
      out << "scheme " << sm.name << ": mean_utility " << fmt(sm.mean_utility)
          << ", not_converged " << sm.n_not_converged;
      if (!sm.ratio_vs_baseline.empty()) {
        out << ", ratio_vs_max_sinr";
        for (std::size_t k = 0; k < sm.ratio_vs_baseline.size(); ++k) {
          out << " p" << report.ratio_percentiles[k] << "="
              << fmt(sm.ratio_vs_baseline[k]);
        }
      }
      out << '\n';
    }
    if (!report.rate_bias_factors.empty()) {
      out << "rate_bias_factors:";
      for (double f : report.rate_bias_factors) out << ' ' << fmt(f);
      out << '\n';
    }
    out << "violations: " << report.violations.size() << '\n';
    for (const std::string& v : report.violations) out << "  " << v << '\n';
  }
}

void export_sweep_csv(const SweepReport& report, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "value,tier,rate_bias,sinr_bias_db\n";
  for (const SweepPoint& p : report.points) {
    for (std::size_t t = 0; t < p.rate_bias.size(); ++t) {
      out << fmt(p.value) << ',' << t + 1 << ',' << fmt(p.rate_bias[t]) << ',';
      if (t < p.sinr_bias_db.size()) out << fmt(p.sinr_bias_db[t]);
      out << '\n';
    }
  }
}

}  // namespace hetsim
