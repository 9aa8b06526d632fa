// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "selfsim/error.hpp"
#include "selfsim/grid.hpp"
#include "support/generators.hpp"

using namespace selfsim;
using selfsim::testing::Gen;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::Io;
}

Field indicator(const Grid& g, double ell) {
  return Field::sample(g, [ell](double x) { return std::abs(x) <= ell ? 1.0 : 0.0; });
}

}  // namespace

TEST_CASE("grid construction") {
  const Grid g(-8.0, 8.0, 5001);
  CHECK(g.dx() == doctest::Approx(16.0 / 5000.0));
  CHECK(g.x(0) == -8.0);
  CHECK(g.x(5000) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(g.symmetric());
  CHECK(g.x(g.center_index()) == doctest::Approx(0.0));

  const Grid s = Grid::with_spacing(-10.0, 10.0, 0.125);
  CHECK(s.size() == 161);
  CHECK(s.dx() == doctest::Approx(0.125));
  CHECK_FALSE(Grid(-1.0, 2.0, 11).symmetric());
  CHECK_FALSE(Grid(-1.0, 1.0, 10).symmetric());

  CHECK(kind_of([] { Grid(1.0, 1.0, 10); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { Grid(0.0, 1.0, 3); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { Grid::with_spacing(0.0, 1.0, -0.1); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("sup_norm") {
  const Grid g(-8.0, 8.0, 5001);
  CHECK(sup_norm(Field(g)) == 0.0);
  CHECK(sup_norm(indicator(g, 0.5)) == 1.0);
  Field two(Grid(0.0, 3.0, 4), {-3.0, 2.0, 0.0, 1.0});
  CHECK(sup_norm(two) == 3.0);
  two[2] = std::numeric_limits<double>::quiet_NaN();
  CHECK(kind_of([&] { sup_norm(two); }) == ErrorKind::NonFinite);
  two[2] = std::numeric_limits<double>::infinity();
  CHECK(kind_of([&] { two.check_finite(); }) == ErrorKind::NonFinite);
}

TEST_CASE("total_mass") {
  const Grid g(-8.0, 8.0, 5001);
  CHECK(std::abs(total_mass(indicator(g, 0.5)) - 1.0) <= g.dx());
  CHECK(total_mass(Field(g)) == 0.0);
  const Field odd = Field::sample(g, [](double x) {
    if (x >= -1.0 && x <= 0.0) return -1.0;
    if (x > 0.0 && x <= 1.0) return 1.0;
    return 0.0;
  });
  CHECK(std::abs(total_mass(odd)) <= g.dx());
  // Trapezoid weights: half at both ends.
  const Field ones(Grid(0.0, 2.0, 5), {1.0, 1.0, 1.0, 1.0, 1.0});
  CHECK(total_mass(ones) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("interpolate") {
  const Grid g(-1.0, 1.0, 21);
  const Field affine = Field::sample(g, [](double x) { return 2.0 * x + 1.0; });
  CHECK(interpolate(affine, 0.37, Interpolation::Linear) == doctest::Approx(1.74).epsilon(1e-14));
  CHECK(interpolate(affine, 0.37, Interpolation::Cubic) == doctest::Approx(1.74).epsilon(1e-14));

  const Field cube = Field::sample(g, [](double x) { return x * x * x; });
  for (double x : {-0.999, -0.93, -0.31, 0.0, 0.123, 0.77, 0.96, 1.0}) {
    CHECK(interpolate(cube, x, Interpolation::Cubic) == doctest::Approx(x * x * x).epsilon(1e-13));
  }
  CHECK(kind_of([&] { interpolate(cube, 1.01, Interpolation::Linear); }) == ErrorKind::OutOfDomain);
  CHECK(kind_of([&] { interpolate(cube, -1.5, Interpolation::Cubic); }) == ErrorKind::OutOfDomain);

  // Mid-node linear value is the neighbour average; error against the
  // Gaussian itself is O(dx^2).
  auto gauss = [](double x) { return std::exp(-x * x); };
  double prev_err = 0.0;
  for (std::size_t n : {41u, 81u, 161u}) {
    const Grid gg(-4.0, 4.0, n);
    const Field f = Field::sample(gg, gauss);
    double err = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double xm = 0.5 * (gg.x(i) + gg.x(i + 1));
      const double v = interpolate(f, xm, Interpolation::Linear);
      CHECK(v == doctest::Approx(0.5 * (f[i] + f[i + 1])).epsilon(1e-14));
      err = std::max(err, std::abs(v - gauss(xm)));
    }
    if (prev_err > 0.0) CHECK(prev_err / err == doctest::Approx(4.0).epsilon(0.15));
    prev_err = err;
  }
}

TEST_CASE("rescale_resample") {
  const Grid g(-4.0, 4.0, 801);
  const Field lin = Field::sample(g, [](double x) { return x; });
  const Field half = rescale_resample(lin, 0.5, Interpolation::Linear, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(half[i] == doctest::Approx(0.5 * g.x(i)).epsilon(1e-13));

  // Queries beyond the ends take the outside values.
  const Field wide = rescale_resample(lin, 2.0, Interpolation::Cubic, -7.0, 9.0);
  CHECK(wide[0] == -7.0);
  CHECK(wide[g.size() - 1] == 9.0);
  CHECK(wide[g.center_index()] == doctest::Approx(0.0));

  const double L = 1.2;
  const Field hump = Field::sample(g, [](double x) { return std::abs(x) < 1.0 ? std::pow(std::cos(std::numbers::pi * x / 2), 2) : 0.0; });
  const Field widened = rescale_resample(hump, std::pow(L, -0.5), Interpolation::Cubic, 0.0);
  CHECK(total_mass(widened) / total_mass(hump) == doctest::Approx(std::sqrt(L)).epsilon(1e-4));

  CHECK(kind_of([&] { rescale_resample(lin, 0.0, Interpolation::Linear, 0.0); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("normalize_amplitude") {
  const Grid g(-1.0, 1.0, 5);
  const Field f(g, {0.1, -0.8, 0.4, 0.0, 0.2});
  const auto [n, s] = normalize_amplitude(f);
  CHECK(s == 0.8);
  CHECK(sup_norm(n) == 1.0);
  const auto [n2, s2] = normalize_amplitude(n);
  CHECK(s2 == 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(n2[i] == n[i]);
  CHECK(kind_of([&] { normalize_amplitude(Field(g)); }) == ErrorKind::ZeroField);

  const Grid gd(-3.0, 3.0, 301);
  const Field dip = Field::sample(gd, [](double z) { return 0.3 * z * std::exp(-z * z + 0.5) / std::sqrt(0.5); });
  const auto [nd, sd] = normalize_amplitude(dip);
  CHECK(sup_norm(nd) == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t i = 0; i < gd.size(); ++i) CHECK(std::signbit(nd[i]) == std::signbit(dip[i]));
  (void)sd;
}

TEST_CASE("symmetrize_odd") {
  const Grid g(-2.0, 2.0, 41);
  const Field odd = Field::sample(g, [](double x) { return std::sin(x); });
  const Field so = symmetrize_odd(odd);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(so[i] == doctest::Approx(odd[i]).epsilon(1e-15));

  const Field even = Field::sample(g, [](double x) { return std::cos(x) + 2.0; });
  const Field se = symmetrize_odd(even);
  const std::size_t c = g.center_index();
  CHECK(se[c] == 0.0);
  for (std::size_t k = 1; k <= c; ++k) {
    CHECK(se[c + k] == even[c + k]);
    CHECK(se[c - k] == -even[c + k]);
  }
  CHECK(kind_of([] { symmetrize_odd(Field(Grid(-1.0, 2.0, 11))); }) == ErrorKind::AsymmetricGrid);
  CHECK(kind_of([] { symmetrize_odd(Field(Grid(-1.0, 1.0, 10))); }) == ErrorKind::AsymmetricGrid);
}

TEST_CASE("profile files round-trip at 15 significant digits") {
  const Grid g(-1.0, 1.0, 9);
  const Field f = Field::sample(g, [](double x) { return std::exp(x) / 3.0; });
  const auto path = (std::filesystem::temp_directory_path() / "selfsim_profile_rt.dat").string();
  write_profile(path, f, {{"n", "7"}, {"alpha_bar", "0.5"}});
  const Profile p = read_profile(path);
  CHECK(p.metadata.at("n") == "7");
  CHECK(p.metadata.at("alpha_bar") == "0.5");
  REQUIRE(p.values.size() == f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(p.x[i] == doctest::Approx(g.x(i)).epsilon(1e-14));
    CHECK(p.values[i] == doctest::Approx(f[i]).epsilon(1e-14));
  }
  CHECK(format_real(1.0 / 3.0) == "0.333333333333333");
  std::filesystem::remove(path);
}

// Property suites: randomized inputs from fixed seeds.

TEST_CASE("property: resample with factor 1 is the identity") {
  Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Grid g = gen.any_grid();
    const Field f = gen.noise(g, gen.real(0.1, 100.0));
    for (auto order : {Interpolation::Linear, Interpolation::Cubic}) {
      const Field r = rescale_resample(f, 1.0, order, 123.0);
      for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(r[i] == f[i]);
    }
  }
}

TEST_CASE("property: linear interpolation stays within its stencil") {
  Gen gen(12);
  for (int trial = 0; trial < 200; ++trial) {
    const Grid g = gen.any_grid();
    const Field f = gen.noise(g);
    for (int q = 0; q < 50; ++q) {
      const double x = gen.real(g.x_min(), g.x_max());
      const auto i = std::min<std::size_t>(static_cast<std::size_t>((x - g.x_min()) / g.dx()), g.size() - 2);
      const double v = interpolate(f, x, Interpolation::Linear);
      REQUIRE(v >= std::min(f[i], f[i + 1]) - 1e-15);
      REQUIRE(v <= std::max(f[i], f[i + 1]) + 1e-15);
    }
  }
}

TEST_CASE("property: normalization is idempotent") {
  Gen gen(13);
  for (int trial = 0; trial < 200; ++trial) {
    const Grid g = gen.any_grid();
    const Field f = gen.noise(g, std::pow(10.0, gen.real(-8.0, 8.0)));
    const auto [once, s1] = normalize_amplitude(f);
    const auto [twice, s2] = normalize_amplitude(once);
    REQUIRE(std::abs(s2 - 1.0) <= 1e-14);
    for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(std::abs(twice[i] - once[i]) <= 1e-14);
    (void)s1;
  }
}

TEST_CASE("property: odd symmetrization has zero mass and exact antisymmetry") {
  Gen gen(14);
  for (int trial = 0; trial < 200; ++trial) {
    const Grid g = gen.symmetric_grid();
    const Field s = symmetrize_odd(gen.noise(g, gen.real(0.1, 10.0)));
    REQUIRE(std::abs(total_mass(s)) <= 1e-12 * static_cast<double>(g.size()));
    const std::size_t c = g.center_index();
    for (std::size_t k = 0; k <= c; ++k) REQUIRE(s[c - k] == -s[c + k]);
  }
}

TEST_CASE("property: cubic interpolation reproduces cubics anywhere") {
  Gen gen(15);
  for (int trial = 0; trial < 100; ++trial) {
    const Grid g = gen.any_grid();
    const double a = gen.real(-2, 2), b = gen.real(-2, 2), c = gen.real(-2, 2), d = gen.real(-2, 2);
    auto p = [&](double x) { return ((a * x + b) * x + c) * x + d; };
    const Field f = Field::sample(g, p);
    const double scale = 1.0 + sup_norm(f);
    for (int q = 0; q < 20; ++q) {
      const double x = gen.real(g.x_min(), g.x_max());
      REQUIRE(std::abs(interpolate(f, x, Interpolation::Cubic) - p(x)) <= 1e-11 * scale);
    }
  }
}
