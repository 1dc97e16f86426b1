// Copyright 2026 the hetsim authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef HETSIM_RNG_H_
#define HETSIM_RNG_H_

#include <cmath>
#include <cstdint>

namespace hetsim {

// splitmix64 step (Steele, Lea, Flood 2014). Public-domain reference constants.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic random stream with named substreams.
//
// std::mt19937_64 is portable, but the standard *distributions* are
// implementation-defined, so frozen test values would not survive a stdlib
// change. All transforms here (uniform, Box-Muller normal, Knuth Poisson)
// are spelled out and therefore bit-stable across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Independent stream derived from (seed, stream). Streams with nearby ids
  // are decorrelated by the double splitmix64 pass.
  static Rng substream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    std::uint64_t mixed = splitmix64_next(s);
    Rng r(mixed ^ (stream * 0xD6E8FEB86659FD93ULL + 0x2545F4914F6CDD1DULL));
    r.next();
    return r;
  }

  std::uint64_t next() { return splitmix64_next(state_); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; caches the second variate.
  double normal(double mean, double stddev) {
    if (have_spare_) {
      have_spare_ = false;
      return mean + stddev * spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return mean + stddev * r * std::cos(theta);
  }

  // Knuth multiplication method; exact for any mean via additivity of the
  // Poisson distribution (chunks of 16 keep e^-lambda well above underflow).
  int poisson(double mean) {
    int total = 0;
    while (mean > 16.0) {
      total += poisson_small(16.0);
      mean -= 16.0;
    }
    return total + poisson_small(mean);
  }

 private:
  int poisson_small(double mean) {
    const double limit = std::exp(-mean);
    double prod = 1.0;
    int n = -1;
    do {
      ++n;
      prod *= uniform();
    } while (prod > limit);
    return n;
  }

  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hetsim

#endif  // HETSIM_RNG_H_
