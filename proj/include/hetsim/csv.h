// Copyright 2026 the hetsim authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef HETSIM_CSV_H_
#define HETSIM_CSV_H_

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

namespace hetsim {

// Shortest round-trippable decimal form; keeps report bytes reproducible.
inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace hetsim

#endif  // HETSIM_CSV_H_
