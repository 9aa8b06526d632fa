// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "selfsim/tridiagonal.hpp"

#include <cmath>
#include <vector>

#include "selfsim/error.hpp"

namespace selfsim {

namespace {

void check_sizes(std::size_t a, std::size_t b, std::size_t c, std::size_t d, std::size_t min_n) {
  if (a != b || b != c || c != d) {
    throw Error(ErrorKind::InvalidArgument, "tridiagonal bands must have equal length");
  }
  if (a < min_n) throw Error(ErrorKind::InvalidArgument, "tridiagonal system too small");
}

void thomas(std::span<const double> lower, std::span<const double> diag,
            std::span<const double> upper, std::span<double> rhs, std::vector<double>& scratch) {
  const std::size_t n = diag.size();
  scratch.resize(n);
  double pivot = diag[0];
  if (pivot == 0.0 || !std::isfinite(pivot)) {
    throw Error(ErrorKind::SingularSystem, "zero pivot at row 0");
  }
  rhs[0] /= pivot;
  for (std::size_t i = 1; i < n; ++i) {
    scratch[i] = upper[i - 1] / pivot;
    pivot = diag[i] - lower[i] * scratch[i];
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw Error(ErrorKind::SingularSystem, "zero pivot at row " + std::to_string(i));
    }
    rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= scratch[i + 1] * rhs[i + 1];
}

}  // namespace

void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs) {
  check_sizes(lower.size(), diag.size(), upper.size(), rhs.size(), 1);
  std::vector<double> scratch;
  thomas(lower, diag, upper, rhs, scratch);
}

void solve_cyclic_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                              std::span<const double> upper, std::span<double> rhs) {
  check_sizes(lower.size(), diag.size(), upper.size(), rhs.size(), 3);
  const std::size_t n = diag.size();
  const double alpha = upper[n - 1];  // A[n-1][0]
  const double beta = lower[0];       // A[0][n-1]
  const double gamma = -diag[0];

  std::vector<double> d(diag.begin(), diag.end());
  d[0] -= gamma;
  d[n - 1] -= alpha * beta / gamma;

  std::vector<double> scratch;
  thomas(lower, d, upper, rhs, scratch);

  std::vector<double> z(n, 0.0);
  z[0] = gamma;
  z[n - 1] = alpha;
  thomas(lower, d, upper, z, scratch);

  const double denom = 1.0 + z[0] + beta * z[n - 1] / gamma;
  if (denom == 0.0 || !std::isfinite(denom)) {
    throw Error(ErrorKind::SingularSystem, "periodic correction degenerates");
  }
  const double fact = (rhs[0] + beta * rhs[n - 1] / gamma) / denom;
  for (std::size_t i = 0; i < n; ++i) rhs[i] -= fact * z[i];
}

}  // namespace selfsim
