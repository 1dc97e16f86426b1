// Copyright 2026 the hetsim authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: scenario generation, scheme comparisons, bias
// search/sweep, dual trace export.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hetsim/csv.h"
#include "hetsim/experiments.h"
#include "hetsim/topology.h"

namespace {

using namespace hetsim;

std::string join_path(const std::string& dir, const char* name) {
  return (std::filesystem::path(dir) / name).string();
}

ScenarioConfig scenario_from(const std::string& config_path) {
  return config_path.empty() ? default_config() : load_config(config_path);
}

int cmd_gen(const std::string& config_path, std::uint64_t seed,
            const std::string& out_dir) {
  const ScenarioConfig cfg = scenario_from(config_path);
  const Scenario sc = generate_scenario(cfg, seed);
  const LinkTable links = compute_link_table(sc);
  std::filesystem::create_directories(out_dir);
  save_config(sc.config, join_path(out_dir, "scenario.json"));
  {
    std::ofstream out = open_out(join_path(out_dir, "bss.csv"));
    out << "bs_id,tier,x,y,power_dbm\n";
    for (const BaseStation& b : sc.bss) {
      out << b.id << ',' << b.tier + 1 << ',' << fmt(b.x) << ',' << fmt(b.y)
          << ',' << fmt(b.power_dbm) << '\n';
    }
  }
  {
    std::ofstream out = open_out(join_path(out_dir, "users.csv"));
    out << "user_id,x,y\n";
    for (const User& u : sc.users) {
      out << u.id << ',' << fmt(u.x) << ',' << fmt(u.y) << '\n';
    }
  }
  export_link_table_csv(links, join_path(out_dir, "links.csv"));
  std::printf("wrote scenario with %d BSs, %d users to %s\n", sc.n_bs(),
              sc.n_users(), out_dir.c_str());
  return 0;
}

int cmd_run(const ExperimentConfig& cfg, bool strict) {
  const MetricsReport report = run_comparison(cfg);
  export_report(report, cfg.out_dir);
  int not_converged = 0;
  for (const SchemeMetrics& sm : report.schemes) {
    std::printf("%-12s mean_utility %10.4f not_converged %d\n",
                sm.name.c_str(), sm.mean_utility, sm.n_not_converged);
    not_converged += sm.n_not_converged;
  }
  for (const std::string& v : report.violations) {
    std::fprintf(stderr, "violation: %s\n", v.c_str());
  }
  if (!report.violations.empty()) return 2;
  if (strict && not_converged > 0) return 3;
  return 0;
}

int cmd_bias_search(ExperimentConfig cfg) {
  // Reference: mean fractional optimum across the same trials.
  double ref = 0.0;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const Scenario sc =
        generate_scenario(cfg.scenario, cfg.seed_base + trial);
    ref += solve_fua(compute_link_table(sc), cfg.tol, cfg.max_iter).utility;
  }
  ref /= cfg.trials;
  const BiasSearchResult res = sinr_bias_search(cfg, ref);
  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream out = open_out(join_path(cfg.out_dir, "bias_search.csv"));
  out << "tier,sinr_factor,sinr_db\n";
  for (std::size_t t = 0; t < res.bias.sinr_factors.size(); ++t) {
    out << t + 1 << ',' << fmt(res.bias.sinr_factors[t]) << ','
        << fmt(res.db[t]) << '\n';
  }
  std::printf("best factors (dB):");
  for (double db : res.db) std::printf(" %.2f", db);
  std::printf("\nmean utility %.4f, gap to fractional optimum %.4f\n",
              res.mean_utility, res.fua_gap);
  return 0;
}

int cmd_bias_sweep(const ExperimentConfig& cfg, const SweepSpec& spec) {
  const SweepReport report = bias_sweep(cfg, spec);
  std::filesystem::create_directories(cfg.out_dir);
  export_sweep_csv(report, join_path(cfg.out_dir, "bias_sweep.csv"));
  for (const SweepPoint& p : report.points) {
    std::printf("value %.3f rate_bias", p.value);
    for (double b : p.rate_bias) std::printf(" %.4f", b);
    std::printf("\n");
  }
  return 0;
}

int cmd_dual_trace(const std::string& config_path, std::uint64_t seed,
                   int max_iter, const std::string& out_dir, bool strict) {
  const ScenarioConfig cfg = scenario_from(config_path);
  const Scenario sc = generate_scenario(cfg, seed);
  const LinkTable links = compute_link_table(sc);
  const DualResult res = run_dual(links, StepsizeParams{}, max_iter);
  std::filesystem::create_directories(out_dir);
  export_dual_trace_csv(res, join_path(out_dir, "dual_trace.csv"));
  {
    std::ofstream out = open_out(join_path(out_dir, "dual_mu.csv"));
    out << "bs_id,tier,mu,supply,demand\n";
    for (std::size_t j = 0; j < res.state.mu.size(); ++j) {
      out << j << ',' << links.bs_tier[j] + 1 << ',' << fmt(res.state.mu[j])
          << ',' << fmt(res.state.supply[j]) << ','
          << fmt(res.state.demand[j]) << '\n';
    }
  }
  std::printf(
      "iters %d converged %d plateaued %d min_dual %.4f ref %.4f "
      "guarantee_ok %d unbalanced %zu\n",
      res.iters, res.converged ? 1 : 0, res.plateaued ? 1 : 0, res.min_dual,
      res.d_ref, res.theorem_ok ? 1 : 0, res.unbalanced.size());
  if (strict && !res.converged) return 3;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-tier downlink user-association simulator"};
  app.require_subcommand(1);
  // Let options shared by every mode (--seed, --out, ...) appear after the
  // subcommand name as well as before it.
  app.fallthrough();

  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int trials = 20;
  double tol = -1.0;
  bool strict = false;
  app.add_option("--config", config_path, "scenario config JSON");
  app.add_option("--seed", seed, "seed (seed base for multi-trial runs)");
  app.add_option("--trials", trials, "number of trials");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--tol", tol, "solver tolerance (<= 0: 1e-6 per user)");
  app.add_flag("--strict", strict, "nonzero exit on non-convergence");

  CLI::App* gen = app.add_subcommand("gen", "emit a scenario and its links");

  CLI::App* run = app.add_subcommand("run", "compare association schemes");
  std::vector<std::string> schemes = all_schemes();
  run->add_option("--schemes", schemes, "schemes to evaluate")
      ->delimiter(',');

  CLI::App* search =
      app.add_subcommand("bias-search", "grid search SINR bias factors");
  double grid_min = 0.0, grid_max = 18.0, grid_step = 0.5;
  search->add_option("--grid-min", grid_min, "grid start, dB");
  search->add_option("--grid-max", grid_max, "grid end, dB");
  search->add_option("--grid-step", grid_step, "grid step, dB");

  CLI::App* sweep =
      app.add_subcommand("bias-sweep", "rate-bias factors across a sweep");
  SweepSpec spec;
  spec.values = {1.0, 2.0};
  int sweep_tier = 2;  // 1-based; tier 1 is the macro tier
  sweep->add_option("--tier", sweep_tier, "swept tier (2 = pico, 3 = femto)");
  sweep->add_option("--kind", spec.kind, "'density' or 'power'");
  sweep->add_option("--values", spec.values, "sweep values")->delimiter(',');

  CLI::App* dual =
      app.add_subcommand("dual-trace", "run the distributed algorithm once");
  int dual_iters = 500;
  dual->add_option("--max-iter", dual_iters, "iteration cap");

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig cfg;
    cfg.scenario = scenario_from(config_path);
    cfg.trials = trials;
    cfg.seed_base = seed;
    cfg.tol = tol;
    cfg.out_dir = out_dir;
    cfg.bias_grid_db_min = grid_min;
    cfg.bias_grid_db_max = grid_max;
    cfg.bias_grid_db_step = grid_step;

    if (gen->parsed()) return cmd_gen(config_path, seed, out_dir);
    if (run->parsed()) {
      cfg.schemes = schemes;
      return cmd_run(cfg, strict);
    }
    if (search->parsed()) {
      cfg.schemes = {};
      return cmd_bias_search(cfg);
    }
    if (sweep->parsed()) {
      cfg.schemes = {};
      spec.tier = sweep_tier - 1;
      return cmd_bias_sweep(cfg, spec);
    }
    if (dual->parsed()) {
      return cmd_dual_trace(config_path, seed, dual_iters, out_dir, strict);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
