// Copyright 2026 the hetsim authors.
// SPDX-License-Identifier: Apache-2.0

#include "hetsim/association.h"

#include <cmath>
#include <stdexcept>

#include "hetsim/csv.h"

namespace hetsim {

namespace {

// argmax over a row score, lowest index on ties (strict > scan).
template <typename Score>
Association argmax_assoc(int nu, int nb, Score&& score) {
  std::vector<int> choice(nu, 0);
  for (int i = 0; i < nu; ++i) {
    double best = score(i, 0);
    for (int j = 1; j < nb; ++j) {
      const double s = score(i, j);
      if (s > best) {
        best = s;
        choice[i] = j;
      }
    }
  }
  return association_from_choices(choice, nb);
}

void check_positive(const std::vector<double>& factors, const char* what) {
  if (factors.empty()) {
    throw std::invalid_argument(std::string(what) + ": no factors given");
  }
  for (double f : factors) {
    if (!(f > 0.0)) {
      throw std::invalid_argument(std::string(what) +
                                  ": factors must be positive");
    }
  }
}

}  // namespace

Association association_from_choices(const std::vector<int>& choice,
                                     int n_bs) {
  Association a;
  a.x = Table(static_cast<int>(choice.size()), n_bs);
  a.integer = true;
  for (int i = 0; i < a.x.rows; ++i) a.x(i, choice[i]) = 1.0;
  return a;
}

std::vector<int> association_choices(const Association& assoc) {
  std::vector<int> choice(assoc.x.rows, 0);
  for (int i = 0; i < assoc.x.rows; ++i) {
    double best = assoc.x(i, 0);
    for (int j = 1; j < assoc.x.cols; ++j) {
      if (assoc.x(i, j) > best) {
        best = assoc.x(i, j);
        choice[i] = j;
      }
    }
  }
  return choice;
}

std::vector<double> loads(const Association& assoc) {
  std::vector<double> k(assoc.x.cols, 0.0);
  for (int i = 0; i < assoc.x.rows; ++i) {
    for (int j = 0; j < assoc.x.cols; ++j) k[j] += assoc.x(i, j);
  }
  return k;
}

RateOutcome long_term_rates(const Association& assoc, const LinkTable& links) {
  const int nu = assoc.x.rows;
  const int nb = assoc.x.cols;
  const std::vector<double> k = loads(assoc);
  RateOutcome out;
  out.rate.assign(nu, 0.0);
  for (int i = 0; i < nu; ++i) {
    double row_sum = 0.0;
    double r = 0.0;
    for (int j = 0; j < nb; ++j) {
      const double w = assoc.x(i, j);
      row_sum += w;
      if (w > 0.0) r += w * links.rate(i, j) / k[j];
    }
    if (std::fabs(row_sum - 1.0) > 1e-9) {
      throw std::invalid_argument("association row does not sum to 1");
    }
    out.rate[i] = r;
    out.utility += std::log(r);
  }
  return out;
}

BiasConfig unit_bias(int n_tiers) {
  BiasConfig b;
  b.sinr_factors.assign(n_tiers, 1.0);
  b.rate_factors.assign(n_tiers, 1.0);
  return b;
}

Association max_sinr_assoc(const LinkTable& links) {
  return argmax_assoc(links.n_users(), links.n_bs(),
                      [&](int i, int j) { return links.sinr(i, j); });
}

Association biased_sinr_assoc(const LinkTable& links, const BiasConfig& bias) {
  check_positive(bias.sinr_factors, "biased_sinr_assoc");
  return argmax_assoc(links.n_users(), links.n_bs(), [&](int i, int j) {
    return bias.sinr_factors[links.bs_tier[j]] * links.sinr(i, j);
  });
}

Association biased_rate_assoc(const LinkTable& links, const BiasConfig& bias) {
  check_positive(bias.rate_factors, "biased_rate_assoc");
  return argmax_assoc(links.n_users(), links.n_bs(), [&](int i, int j) {
    return bias.rate_factors[links.bs_tier[j]] * links.rate(i, j);
  });
}

Association round_fractional(const Association& assoc) {
  std::vector<int> choice(assoc.x.rows, 0);
  for (int i = 0; i < assoc.x.rows; ++i) {
    double best = assoc.x(i, 0);
    for (int j = 1; j < assoc.x.cols; ++j) {
      if (assoc.x(i, j) > best) {
        best = assoc.x(i, j);
        choice[i] = j;
      }
    }
  }
  return association_from_choices(choice, assoc.x.cols);
}

void export_association_csv(const Association& assoc,
                            const std::string& path) {
  std::ofstream out = open_out(path);
  out << "user_id,bs_id,weight\n";
  for (int i = 0; i < assoc.x.rows; ++i) {
    for (int j = 0; j < assoc.x.cols; ++j) {
      if (assoc.x(i, j) > 0.0) {
        out << i << ',' << j << ',' << fmt(assoc.x(i, j)) << '\n';
      }
    }
  }
}

}  // namespace hetsim
