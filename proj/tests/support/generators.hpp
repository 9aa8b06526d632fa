// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "selfsim/grid.hpp"

namespace selfsim::testing {

// Fixed seeds keep every property run reproducible.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool coin() { return index(0, 1) == 1; }

  /// Symmetric grid with an odd node count.
  Grid symmetric_grid() {
    const double half = real(1.0, 20.0);
    return Grid(-half, half, 2 * index(8, 400) + 1);
  }

  Grid any_grid() {
    const double a = real(-20.0, 5.0);
    return Grid(a, a + real(0.5, 30.0), index(5, 800));
  }

  /// Random values in [-scale, scale].
  Field noise(const Grid& g, double scale = 1.0) {
    Field f(g);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = real(-scale, scale);
    return f;
  }

  /// Sum of a few Gaussian bumps: smooth, nonnegative when `positive`.
  Field bumps(const Grid& g, bool positive) {
    const std::size_t k = index(1, 4);
    double c[4], w[4], a[4];
    const double span = g.x_max() - g.x_min();
    for (std::size_t j = 0; j < k; ++j) {
      c[j] = g.x_min() + span * real(0.3, 0.7);
      w[j] = span * real(0.03, 0.08);
      a[j] = positive ? real(0.2, 2.0) : real(-2.0, 2.0);
    }
    return Field::sample(g, [&](double x) {
      double s = 0.0;
      for (std::size_t j = 0; j < k; ++j) s += a[j] * std::exp(-(x - c[j]) * (x - c[j]) / (w[j] * w[j]));
      return s;
    });
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace selfsim::testing
