// Copyright 2026 the hetsim authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "hetsim/fua.h"
#include "hetsim/rng.h"
#include "test_util.h"

using namespace hetsim;
using hetsim_test::links_from_rates;
using hetsim_test::random_rates;
using hetsim_test::rel_err;

namespace {

LinkTable two_by_two() {
  Table c(2, 2);
  c(0, 0) = 4.0;
  c(0, 1) = 1.0;
  c(1, 0) = 1.0;
  c(1, 1) = 4.0;
  return links_from_rates(c);
}

Association uniform_assoc(int nu, int nb) {
  Association a;
  a.x = Table(nu, nb);
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nb; ++j) a.x(i, j) = 1.0 / nb;
  }
  return a;
}

}  // namespace

TEST_CASE("single BS: forced column, immediate convergence") {
  Rng rng(5);
  const int nu = 12;
  Table c = random_rates(nu, 1, rng);
  const LinkTable lt = links_from_rates(c);
  const FuaSolution sol = solve_fua(lt);
  CHECK(sol.converged);
  CHECK(sol.iters == 1);
  CHECK(sol.gap == 0.0);
  double expect = -nu * std::log(static_cast<double>(nu));
  for (int i = 0; i < nu; ++i) expect += std::log(c(i, 0));
  CHECK(rel_err(sol.utility, expect) < 1e-12);
  for (int i = 0; i < nu; ++i) CHECK(sol.x.x(i, 0) == doctest::Approx(1.0));
}

TEST_CASE("2x2 optimum matches the frozen recomputation") {
  // Independent recomputation: tools/oracles.py dense-grid maximization,
  // optimum at the identity assignment with value 2 ln 4.
  const LinkTable lt = two_by_two();
  const FuaSolution sol = solve_fua(lt, 1e-10);
  CHECK(sol.converged);
  CHECK(rel_err(sol.utility, 2.77258872223978114e+00) < 1e-9);
  CHECK(sol.x.x(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sol.x.x(1, 1) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("solver never falls below its max-SINR starting point") {
  Rng rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    const int nu = 5 + static_cast<int>(rng.next() % 20);
    const int nb = 2 + static_cast<int>(rng.next() % 6);
    const LinkTable lt = links_from_rates(random_rates(nu, nb, rng));
    const double base = fua_objective(lt, max_sinr_assoc(lt));
    const FuaSolution sol = solve_fua(lt);
    CHECK(sol.converged);
    CHECK(sol.utility >= base - 1e-12);
    // Feasibility of the fractional optimum.
    for (int i = 0; i < nu; ++i) {
      double s = 0.0;
      for (int j = 0; j < nb; ++j) {
        CHECK(sol.x.x(i, j) >= 0.0);
        s += sol.x.x(i, j);
      }
      CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("objective and gradient agree with hand values") {
  const LinkTable lt = two_by_two();
  const Association u = uniform_assoc(2, 2);
  // x = 1/2 everywhere: K = (1,1), F = 0.5(ln4 + ln1 + ln1 + ln4) = ln 4.
  CHECK(rel_err(fua_objective(lt, u), std::log(4.0)) < 1e-14);
  const Table g = fua_gradient(lt, u);
  CHECK(g(0, 0) == doctest::Approx(std::log(4.0) - 1.0));
  CHECK(g(0, 1) == doctest::Approx(-1.0));
  CHECK(g(1, 0) == doctest::Approx(-1.0));
  CHECK(g(1, 1) == doctest::Approx(std::log(4.0) - 1.0));
}

TEST_CASE("gradient matches central finite differences") {
  Rng rng(23);
  const LinkTable lt = links_from_rates(random_rates(6, 4, rng));
  Association x = uniform_assoc(6, 4);
  // Nudge off the symmetric point so the loads differ.
  x.x(0, 0) = 0.4;
  x.x(0, 1) = 0.3;
  x.x(0, 2) = 0.2;
  x.x(0, 3) = 0.1;
  const Table g = fua_gradient(lt, x);
  const double h = 1e-6;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 4; ++j) {
      Association hi = x;
      Association lo = x;
      hi.x(i, j) += h;
      lo.x(i, j) -= h;
      const double fd =
          (fua_objective(lt, hi) - fua_objective(lt, lo)) / (2.0 * h);
      CHECK(std::fabs(fd - g(i, j)) <=
            1e-5 * std::max(1.0, std::fabs(g(i, j))));
    }
  }
}

TEST_CASE("linear oracle takes each row's argmax, lowest id on ties") {
  Table g(2, 2);
  g(0, 0) = 0.5;
  g(0, 1) = 2.0;
  g(1, 0) = -1.0;
  g(1, 1) = -3.0;
  CHECK(association_choices(fw_linear_oracle(g)) == std::vector<int>{1, 0});

  Table tie(1, 3);
  tie(0, 0) = 1.0;
  tie(0, 1) = 1.0;
  tie(0, 2) = 1.0;
  CHECK(association_choices(fw_linear_oracle(tie)) == std::vector<int>{0});
}

TEST_CASE("the certificate gap bounds the remaining suboptimality") {
  Rng rng(37);
  for (int rep = 0; rep < 8; ++rep) {
    const LinkTable lt = links_from_rates(random_rates(30, 8, rng));
    const FuaSolution early = solve_fua(lt, 1e-12, 1);
    const FuaSolution full = solve_fua(lt, 1e-10, 5000);
    CHECK(full.converged);
    CHECK(full.utility - early.utility <= early.gap + 1e-9);
    CHECK(full.utility >= early.utility - 1e-12);
  }
}

TEST_CASE("gap at the optimum is nonnegative and within tolerance") {
  Rng rng(41);
  const LinkTable lt = links_from_rates(random_rates(40, 6, rng));
  const FuaSolution sol = solve_fua(lt);  // default tol = 1e-6 * N_U
  CHECK(sol.converged);
  CHECK(sol.gap >= 0.0);
  CHECK(sol.gap <= 1e-6 * 40);
  CHECK(fw_gap(lt, sol.x) == doctest::Approx(sol.gap));
}

TEST_CASE("sweep trace is monotone in utility and ends at the result") {
  Rng rng(53);
  const LinkTable lt = links_from_rates(random_rates(50, 10, rng));
  const FuaSolution sol = solve_fua(lt, 1e-9);
  REQUIRE(!sol.trace.empty());
  for (size_t t = 1; t < sol.trace.size(); ++t) {
    CHECK(sol.trace[t].utility >= sol.trace[t - 1].utility - 1e-9);
    CHECK(sol.trace[t].iter == sol.trace[t - 1].iter + 1);
  }
  CHECK(sol.trace.back().utility == sol.utility);
  CHECK(sol.trace.back().fw_gap == sol.gap);
  CHECK(sol.trace.back().iter == sol.iters);
}

TEST_CASE("exhausting max_iter reports converged = false") {
  Rng rng(61);
  const LinkTable lt = links_from_rates(random_rates(30, 8, rng));
  const FuaSolution sol = solve_fua(lt, 1e-14, 1);
  CHECK(!sol.converged);
  CHECK(sol.iters == 1);
}

TEST_CASE("brute force finds the exact integer optimum") {
  const BruteForceSolution bf = brute_force_optimal(two_by_two());
  CHECK(bf.enumerated == 4);
  CHECK(rel_err(bf.utility, 2.77258872223978114e+00) < 1e-14);
  CHECK(association_choices(bf.assoc) == std::vector<int>{0, 1});
}

TEST_CASE("brute force tie-break is lexicographic in the odometer order") {
  Table c(2, 2);
  c(0, 0) = c(0, 1) = c(1, 0) = c(1, 1) = 2.0;
  const BruteForceSolution bf = brute_force_optimal(links_from_rates(c));
  // (0,1) and (1,0) tie at ln 2 + ln 2; the first one found wins.
  CHECK(association_choices(bf.assoc) == std::vector<int>{0, 1});
  CHECK(rel_err(bf.utility, 2.0 * std::log(2.0)) < 1e-14);
}

TEST_CASE("brute force refuses instances above the enumeration cap") {
  Rng rng(67);
  const LinkTable lt = links_from_rates(random_rates(3, 2, rng));
  CHECK_THROWS_AS(brute_force_optimal(lt, 4.0), std::domain_error);
  CHECK(brute_force_optimal(lt, 8.0).enumerated == 8);
}

TEST_CASE("relaxation chain: U_int <= U_bf <= U_fua on small instances") {
  Rng rng(71);
  for (int rep = 0; rep < 15; ++rep) {
    const int nu = 2 + static_cast<int>(rng.next() % 5);
    const int nb = 2 + static_cast<int>(rng.next() % 2);
    const LinkTable lt = links_from_rates(random_rates(nu, nb, rng));
    const FuaSolution sol = solve_fua(lt, 1e-10);
    const BruteForceSolution bf = brute_force_optimal(lt);
    const Association rounded = round_fractional(sol.x);
    const double u_rounded = fua_objective(lt, rounded);
    CHECK(sol.converged);
    CHECK(sol.utility >= bf.utility - 1e-9);
    CHECK(bf.utility >= u_rounded - 1e-12);
  }
}

TEST_CASE("gap report: exact rounding gap and geometric-mean ratio") {
  const LinkTable lt = two_by_two();
  const FuaSolution sol = solve_fua(lt, 1e-10);

  const GapReport tight =
      fua_gap_report(sol, round_fractional(sol.x), lt);
  CHECK(tight.gap == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(tight.geo_mean_ratio == doctest::Approx(1.0).epsilon(1e-8));

  // Both users forced onto BS 0: F = ln 4 + ln 1 - 2 ln 2 = 0, so the gap
  // is the full 2 ln 4 and the per-user ratio is exp(ln 4) = 4.
  const GapReport wide =
      fua_gap_report(sol, association_from_choices({0, 0}, 2), lt);
  CHECK(wide.integer_utility == doctest::Approx(0.0));
  CHECK(wide.gap == doctest::Approx(2.0 * std::log(4.0)).epsilon(1e-8));
  CHECK(wide.geo_mean_ratio == doctest::Approx(4.0).epsilon(1e-6));
}
