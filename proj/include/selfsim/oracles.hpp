// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <string>

#include "selfsim/grid.hpp"

namespace selfsim {

/// Scaled complementary error function e^{x^2} erfc(x).
double erfcx(double x);

struct WhithamParams {
  double M;
  double nu;
  double R() const noexcept { return M / (2.0 * nu); }
};

/// Single-hump similarity profile of viscous Burgers at Reynolds number R,
/// evaluated without forming e^R.
double whitham_g(double z, double R);

/// sqrt(2M) g(z_hat / sqrt(2M), R) at every node (nodes read as z_hat), scaled to peak 1.
Field whitham_profile_on_grid(const Grid& grid, double M, double nu);

/// z_hat exp(-z_hat^2 / (4 nu)).
double dipole_profile(double z_hat, double nu);
/// Dipole sampled on the grid and scaled to peak 1.
Field dipole_profile_on_grid(const Grid& grid, double nu);

enum class PerturbationOrder { Linear, Quadratic };

inline constexpr double kColeWagnerAlpha2 = -0.06354624;

/// 1/2 + eps / sqrt(2 pi e) (+ alpha_2 eps^2).
double cole_wagner_alpha(double epsilon, PerturbationOrder order);

struct AbsorptionTheory {
  double alpha;
  double p_star;
};

/// Decay exponent of u_t = (u^{m+1})_xx - u^p in `dim` dimensions.
AbsorptionTheory absorption_alpha_theory(double p, double m, int dim = 1);

struct LiQiConstants {
  double B;
  double gamma;
  double A_star;
  double A_v;
};

/// Log-corrected decay constants of the cubic autocatalytic system with initial mass A.
LiQiConstants li_qi_constants(double p, double q, double d, double A, double L);

/// exp(-x^2 / (4d)) / sqrt(4 pi d).
double gaussian_phi(double x, double d);

/// (t ln t)^{-1/3}.
double qi_liu_decay(double t);

struct TableRow {
  double epsilon;
  double alpha_linear;
  double alpha_quadratic;
  double alpha_computed;
};

/// Reference decay exponents of the Barenblatt equation for eps = -0.9 .. 1.0.
const std::array<TableRow, 20>& table_a1();

/// Row whose epsilon matches within 1e-9; throws InvalidArgument otherwise.
const TableRow& table_a1_row(double epsilon);

}  // namespace selfsim
