// Copyright 2026 the hetsim authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef HETSIM_TABLE_H_
#define HETSIM_TABLE_H_

#include <cstddef>
#include <vector>

namespace hetsim {

// Dense row-major table of doubles; all N_U x N_B arrays use this.
struct Table {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Table() = default;
  Table(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

  double& operator()(int i, int j) {
    return data[static_cast<std::size_t>(i) * cols + j];
  }
  double operator()(int i, int j) const {
    return data[static_cast<std::size_t>(i) * cols + j];
  }
};

}  // namespace hetsim

#endif  // HETSIM_TABLE_H_
