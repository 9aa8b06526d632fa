// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

namespace selfsim::detail {

/// u^p for u >= 0 with 0^p := 0. Small integer and half-integer exponents
/// avoid the exp/log pair.
class Power {
 public:
  explicit Power(double p) : p_(p) {
    const double twice = 2.0 * p;
    if (p >= 0.0 && p <= 8.0 && twice == std::round(twice)) {
      whole_ = static_cast<int>(std::floor(p));
      half_ = (twice - 2.0 * whole_) != 0.0;
      fast_ = true;
    }
  }

  double operator()(double u) const noexcept {
    if (!(u > 0.0)) return p_ == 0.0 ? 1.0 : 0.0;
    if (!fast_) return std::exp(p_ * std::log(u));
    double r = half_ ? std::sqrt(u) : 1.0;
    for (int k = 0; k < whole_; ++k) r *= u;
    return r;
  }

 private:
  double p_;
  int whole_ = 0;
  bool half_ = false;
  bool fast_ = false;
};

}  // namespace selfsim::detail
