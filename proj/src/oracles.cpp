// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "selfsim/oracles.hpp"

#include <cmath>
#include <numbers>

#include "selfsim/error.hpp"

namespace selfsim {

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
}

double erfcx(double x) {
  if (x < 25.0) return std::erfc(x) * std::exp(x * x);
  const double r = 1.0 / (x * x);
  return (1.0 - 0.5 * r + 0.75 * r * r - 1.875 * r * r * r) / (x * kSqrtPi);
}

double whitham_g(double z, double R) {
  if (!(R > 0.0)) throw Error(ErrorKind::DomainError, "Reynolds number must be positive");
  const double sr = std::sqrt(R);
  const double x = z * sr;
  const double one_minus = -std::expm1(-R);
  const double lead = one_minus / (2.0 * sr);
  if (x >= 0.0) {
    const double denom = kSqrtPi * std::exp(x * x - R) + one_minus * 0.5 * kSqrtPi * erfcx(x);
    return lead / denom;
  }
  const double denom = kSqrtPi * std::exp(-R) + one_minus * 0.5 * kSqrtPi * std::erfc(x);
  return lead * std::exp(-x * x) / denom;
}

namespace {

Field peak_normalized(Field f) {
  double peak = 0.0;
  for (double v : f.values()) peak = std::max(peak, std::abs(v));
  if (peak > 0.0) f *= 1.0 / peak;
  return f;
}

}  // namespace

Field whitham_profile_on_grid(const Grid& grid, double M, double nu) {
  if (!(M > 0.0) || !(nu > 0.0)) throw Error(ErrorKind::DomainError, "M and nu must be positive");
  const double R = M / (2.0 * nu);
  const double s = std::sqrt(2.0 * M);
  return peak_normalized(Field::sample(grid, [&](double z) { return s * whitham_g(z / s, R); }));
}

double dipole_profile(double z_hat, double nu) {
  if (!(nu > 0.0)) throw Error(ErrorKind::DomainError, "nu must be positive");
  return z_hat * std::exp(-z_hat * z_hat / (4.0 * nu));
}

Field dipole_profile_on_grid(const Grid& grid, double nu) {
  return peak_normalized(Field::sample(grid, [&](double z) { return dipole_profile(z, nu); }));
}

double cole_wagner_alpha(double epsilon, PerturbationOrder order) {
  const double a1 = 1.0 / std::sqrt(2.0 * std::numbers::pi * std::numbers::e);
  double a = 0.5 + epsilon * a1;
  if (order == PerturbationOrder::Quadratic) a += kColeWagnerAlpha2 * epsilon * epsilon;
  return a;
}

AbsorptionTheory absorption_alpha_theory(double p, double m, int dim) {
  if (dim < 1) throw Error(ErrorKind::DomainError, "dimension must be >= 1");
  if (!(p > 1.0 + m)) throw Error(ErrorKind::OutOfRegime, "absorption exponent must exceed 1 + m");
  const double p_star = m + 2.0 / static_cast<double>(dim) + 1.0;
  const double alpha = p < p_star ? 1.0 / (p - 1.0) : 1.0 / (p_star - 1.0);
  return {alpha, p_star};
}

LiQiConstants li_qi_constants(double p, double q, double d, double A, double L) {
  constexpr double tol = 1e-12;
  if (std::abs(p + q - 3.0) > tol || !(p > 1.0) || !(p < 2.0) || !(q > 1.0) || !(q < 2.0)) {
    throw Error(ErrorKind::InvalidExponents, "need p + q = 3 with 1 < p, q < 2");
  }
  if (!(d > 0.0) || !(A > 0.0) || !(L > 1.0)) {
    throw Error(ErrorKind::InvalidExponents, "need d > 0, A > 0, L > 1");
  }
  const double pi = std::numbers::pi;
  const double base = 4.0 * pi * std::pow(d, q / 2.0) * std::sqrt(p + q / d) /
                      ((p - 1.0) * std::pow(A, q));
  const double B = std::pow(base, 1.0 / (p - 1.0));
  const double gamma = 1.0 / (p - 1.0);
  const double A_star = B * std::pow(std::log(L), -gamma) / std::sqrt(4.0 * pi);
  const double A_v = A / std::sqrt(4.0 * pi * d);
  return {B, gamma, A_star, A_v};
}

double gaussian_phi(double x, double d) {
  if (!(d > 0.0)) throw Error(ErrorKind::DomainError, "d must be positive");
  return std::exp(-x * x / (4.0 * d)) / std::sqrt(4.0 * std::numbers::pi * d);
}

double qi_liu_decay(double t) {
  if (!(t > 1.0)) throw Error(ErrorKind::DomainError, "reference decay needs t > 1");
  return std::pow(t * std::log(t), -1.0 / 3.0);
}

const std::array<TableRow, 20>& table_a1() {
  static const std::array<TableRow, 20> rows = {{
      {-0.9, 0.282226347932771, 0.230753893532771, 0.177628930214765},
      {-0.8, 0.306423420384685, 0.265753826784685, 0.237625966873617},
      {-0.7, 0.330620492836600, 0.299482835236600, 0.285818489281125},
      {-0.6, 0.354817565288514, 0.331940918888514, 0.336450068396061},
      {-0.5, 0.379014637740428, 0.363128077740428, 0.369213156837354},
      {-0.4, 0.403211710192343, 0.393044311792343, 0.399078625788562},
      {-0.3, 0.427408782644257, 0.421689621044257, 0.426763625391393},
      {-0.2, 0.451605855096171, 0.449064005496171, 0.452587853032610},
      {-0.1, 0.475802927548086, 0.475167465148086, 0.476940935172314},
      {0.0, 0.500000000000000, 0.500000000000000, 0.499991367558985},
      {0.1, 0.524197072451914, 0.523561610051914, 0.521936778063526},
      {0.2, 0.548394144903829, 0.545852295303829, 0.542938675675171},
      {0.3, 0.572591217355743, 0.566872055755743, 0.563094313618048},
      {0.4, 0.596788289807657, 0.586620891407657, 0.582429649916552},
      {0.5, 0.620985362259572, 0.605098802259572, 0.601176410464571},
      {0.6, 0.645182434711486, 0.622305788311486, 0.619283036774065},
      {0.7, 0.669379507163400, 0.638241849563400, 0.636638537608389},
      {0.8, 0.693576579615315, 0.652906986015315, 0.653808099549284},
      {0.9, 0.717773652067229, 0.666301197667229, 0.670383569387994},
      {1.0, 0.741970724519143, 0.678424484519143, 0.686217411435144},
  }};
  return rows;
}

const TableRow& table_a1_row(double epsilon) {
  for (const auto& row : table_a1()) {
    if (std::abs(row.epsilon - epsilon) < 1e-9) return row;
  }
  throw Error(ErrorKind::InvalidArgument, "no reference row for epsilon = " + format_real(epsilon));
}

}  // namespace selfsim
