// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include "doctest.h"
#include "selfsim/error.hpp"
#include "selfsim/scaling.hpp"
#include "support/generators.hpp"

using namespace selfsim;
using selfsim::testing::Gen;

namespace {

void record1(ScalingHistory& h, double alpha, double beta) {
  const double a[1] = {alpha};
  h.record(a, beta);
}

// Explicit product form of the log-decay prefactor, accumulated factor by factor.
long double prefactor_by_product(const std::vector<double>& gamma, double L) {
  const std::size_t n = gamma.size();
  long double a = std::pow(static_cast<long double>(L), 0.5L - gamma[0]);
  for (std::size_t k = 2; k <= n; ++k) {
    const long double ratio = static_cast<long double>(k) / static_cast<long double>(k - 1);
    a *= std::pow(ratio, static_cast<long double>(gamma[n - 1]) - gamma[k - 1]);
  }
  return a;
}

}  // namespace

TEST_CASE("estimate_alpha") {
  CHECK(estimate_alpha(1.0, 1.0, 1.7) == 0.0);
  CHECK(estimate_alpha(1.0, std::pow(4.0, -0.5), 4.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(estimate_alpha(0.0, 1.0, 2.0), Error);
  try {
    estimate_alpha(1.0, 0.0, 2.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroNorm);
  }
}

TEST_CASE("estimate_gamma") {
  const double L = 1.25;
  const double ratio = std::sqrt(L) * std::pow(10.0 / 9.0, 2.0);
  CHECK(estimate_gamma(ratio, 1.0, L, 10) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(estimate_gamma(std::pow(L, 0.7), 1.0, L, 1) == doctest::Approx(0.7).epsilon(1e-13));
  try {
    estimate_gamma(1.0, -1.0, L, 3);
    FAIL("expected ZeroNorm");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroNorm);
  }
}

TEST_CASE("beta rules") {
  CHECK(beta_from_rule(BetaRule::fixed(0.5), 0.9) == 0.5);
  CHECK(beta_from_rule(BetaRule::fixed(1.0 / 3.0), 0.0) == 1.0 / 3.0);
  CHECK(beta_from_rule(BetaRule::unscaled_diffusivity(1.0), 1.0 / 3.0) == doctest::Approx(1.0 / 3.0));
  CHECK(beta_from_rule(BetaRule::unscaled_diffusivity(0.0), 0.7) == 0.5);
}

TEST_CASE("power-law prefactors") {
  ScalingHistory h(1.2);
  for (int n = 0; n < 30; ++n) record1(h, 0.37, 0.5);
  for (std::size_t n = 0; n < h.iterations(); ++n) {
    CHECK(h.prefactor()[n] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(h.B()[n] == doctest::Approx(1.0).epsilon(1e-14));
  }

  ScalingHistory g(2.0);
  record1(g, 1.0, 0.5);
  record1(g, 0.0, 0.25);
  // n = 2: alpha_bar = 1/2, A = 2^{2(0 - 1/2)}; beta_bar = 3/8, B = 2^{2(1/4 - 3/8)}.
  CHECK(g.prefactor().back() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(g.B().back() == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-14));
  CHECK(g.log_amplitude(0, 2) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(g.log_space(2) == doctest::Approx(0.75 * std::log(2.0)).epsilon(1e-14));
  CHECK(g.log_amplitude(0, 0) == 0.0);
}

TEST_CASE("log-decay prefactor examples") {
  const double L = 1.25;
  ScalingHistory h(L, 1, true);
  for (int n = 0; n < 50; ++n) h.record_log_decay(0.5, {}, 0.5);
  for (double a : h.prefactor()) CHECK(a == doctest::Approx(1.0).epsilon(1e-13));

  ScalingHistory g(L, 1, true);
  for (int n = 0; n < 50; ++n) g.record_log_decay(2.0, {}, 0.5);
  for (double a : g.prefactor()) CHECK(a == doctest::Approx(std::pow(L, -1.5)).epsilon(1e-13));
}

TEST_CASE("convergence detection") {
  std::vector<double> s(30, 0.5);
  CHECK(sequence_converged(s));
  s[25] = 0.6;
  CHECK_FALSE(sequence_converged(s));
  CHECK_FALSE(sequence_converged(std::vector<double>(10, 1.0)));
}

TEST_CASE("history guards its modes") {
  ScalingHistory p(1.2);
  CHECK_THROWS_AS(p.record_log_decay(1.0, {}, 0.5), Error);
  ScalingHistory l(1.2, 1, true);
  const double a[1] = {0.5};
  CHECK_THROWS_AS(l.record(a, 0.5), Error);
  CHECK_THROWS_AS(ScalingHistory(1.0), Error);
}

TEST_CASE("property: estimate_alpha is antisymmetric") {
  Gen gen(21);
  for (int i = 0; i < 1000; ++i) {
    const double a = std::pow(10.0, gen.real(-30, 30));
    const double b = std::pow(10.0, gen.real(-30, 30));
    const double L = gen.real(1.001, 10.0);
    REQUIRE(std::abs(estimate_alpha(a, b, L) + estimate_alpha(b, a, L)) <= 1e-12);
  }
}

TEST_CASE("property: synthetic power-law decay is recovered exactly") {
  Gen gen(22);
  for (int trial = 0; trial < 50; ++trial) {
    const double L = gen.real(1.05, 3.0);
    const double alpha0 = gen.real(-1.0, 2.0);
    const double c = gen.real(0.1, 10.0);
    ScalingHistory h(L);
    for (int n = 0; n < 200; ++n) {
      const double s0 = c * std::pow(L, -n * alpha0);
      const double s1 = c * std::pow(L, -(n + 1) * alpha0);
      const double a = estimate_alpha(s0, s1, L);
      REQUIRE(std::abs(a - alpha0) <= 1e-10);
      record1(h, a, 0.5);
      REQUIRE(std::abs(h.prefactor().back() - 1.0) <= 1e-10);
    }
    // Running means recomputed from scratch.
    double sum = 0.0;
    for (std::size_t n = 0; n < h.iterations(); ++n) {
      sum += h.alpha()[n];
      REQUIRE(std::abs(h.alpha_bar()[n] - sum / static_cast<double>(n + 1)) <= 1e-12);
    }
  }
}

TEST_CASE("property: synthetic logarithmic decay is recovered") {
  Gen gen(23);
  for (int trial = 0; trial < 20; ++trial) {
    const double L = gen.real(1.1, 2.0);
    const double gamma0 = gen.real(0.2, 3.0);
    const double c = gen.real(0.5, 5.0);
    // Sup norm at the start of window n (1-based) follows c L^{-n/2} (n ln L)^{-gamma0};
    // the first window is seeded with an arbitrary power-law ratio.
    auto norm = [&](int n) { return c * std::pow(L, -0.5 * n) * std::pow(n * std::log(L), -gamma0); };
    ScalingHistory h(L, 1, true);
    const double first = gen.real(0.1, 1.0);
    h.record_log_decay(estimate_gamma(std::pow(L, first), 1.0, L, 1), {}, 0.5);
    for (int n = 2; n <= 400; ++n) {
      const double g = estimate_gamma(norm(n - 1), norm(n), L, n);
      REQUIRE(std::abs(g - gamma0) <= 1e-9);
      h.record_log_decay(g, {}, 0.5);
    }
    REQUIRE(std::abs(h.prefactor().back() - std::pow(L, 0.5 - first)) <= 1e-9);
  }
}

TEST_CASE("property: incremental log prefactor matches the explicit product") {
  Gen gen(24);
  for (int trial = 0; trial < 4; ++trial) {
    const double L = gen.real(1.05, 2.0);
    ScalingHistory h(L, 1, true);
    std::vector<double> gamma;
    const double centre = gen.real(0.5, 2.5);
    for (int n = 1; n <= 10000; ++n) {
      const double g = centre + gen.real(-0.3, 0.3) / std::sqrt(static_cast<double>(n));
      gamma.push_back(g);
      h.record_log_decay(g, {}, 0.5);
      if (n % 997 == 0 || n == 10000 || n < 20) {
        const long double direct = prefactor_by_product(gamma, L);
        REQUIRE(std::abs(h.prefactor().back() - static_cast<double>(direct)) <=
                1e-9 * std::max(1.0, static_cast<double>(direct)));
      }
    }
  }
}
