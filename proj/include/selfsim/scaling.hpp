// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace selfsim {

/// How the spatial exponent beta_{n+1} follows from alpha_{n+1}.
class BetaRule {
 public:
  enum class Kind { Fixed, UnscaledDiffusivity };

  static BetaRule fixed(double c) { return BetaRule(Kind::Fixed, c); }
  /// Keeps the nonlinear diffusion prefactor L^{-n(m*alpha_bar + 2*beta_bar - 1)} at one.
  static BetaRule unscaled_diffusivity(double m) { return BetaRule(Kind::UnscaledDiffusivity, m); }

  Kind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return parameter_; }
  double operator()(double alpha) const noexcept;

 private:
  BetaRule(Kind kind, double p) : kind_(kind), parameter_(p) {}
  Kind kind_;
  double parameter_;
};

double beta_from_rule(const BetaRule& rule, double alpha);

/// alpha with L^alpha = norm_start / norm_end.
double estimate_alpha(double norm_start, double norm_end, double L);

/// Logarithmic decay exponent. n = 1 uses the power-law inversion; for n > 1
/// solves L^{1/2} (n/(n-1))^gamma = norm_start / norm_end.
double estimate_gamma(double norm_start, double norm_end, double L, int n);

/// Exponent sequences and prefactor bookkeeping of one renormalization run.
///
/// Row n (1-based) describes the state after n completed iterations. Each
/// component keeps its own amplitude exponents; the spatial exponent is shared.
/// In log-decay mode component 0 is tracked through gamma instead of a power law.
class ScalingHistory {
 public:
  explicit ScalingHistory(double L, std::size_t components = 1, bool log_decay = false);

  double L() const noexcept { return L_; }
  double log_L() const noexcept { return log_L_; }
  std::size_t components() const noexcept { return comps_.size(); }
  bool log_decay() const noexcept { return log_decay_; }
  std::size_t iterations() const noexcept { return beta_.size(); }

  /// Appends one power-law iteration (one alpha per component).
  void record(std::span<const double> alphas, double beta);
  /// Appends one log-decay iteration: gamma for component 0, alphas for the rest.
  void record_log_decay(double gamma, std::span<const double> other_alphas, double beta);

  /// Effective amplitude exponents ln(applied factor)/ln L. In log-decay mode
  /// component 0 still gets an entry here even though gamma is the tracked exponent.
  const std::vector<double>& alpha(std::size_t c = 0) const { return comps_.at(c).alpha; }
  const std::vector<double>& alpha_bar(std::size_t c = 0) const { return comps_.at(c).alpha_bar; }
  /// A_n for power-law components, A_{u,n} for the log-decay component.
  const std::vector<double>& prefactor(std::size_t c = 0) const { return comps_.at(c).prefactor; }
  const std::vector<double>& beta() const noexcept { return beta_; }
  const std::vector<double>& beta_bar() const noexcept { return beta_bar_; }
  const std::vector<double>& B() const noexcept { return B_; }
  const std::vector<double>& gamma() const noexcept { return gamma_; }
  /// Running sum over k = 2..n of gamma_k * ln(k/(k-1)).
  double S_log() const noexcept { return S_log_; }

  /// ln of the product of amplitude factors applied to component c during the
  /// first n iterations (n * alpha_bar_n * ln L in power-law mode).
  double log_amplitude(std::size_t c, std::size_t n) const;
  /// n * beta_bar_n * ln L.
  double log_space(std::size_t n) const;

 private:
  struct Component {
    std::vector<double> alpha;
    std::vector<double> alpha_bar;
    std::vector<double> prefactor;
    std::vector<double> log_amp;  // cumulative, one entry per iteration
    double alpha_sum = 0.0;
  };

  void push_alpha(Component& comp, double alpha);

  double L_;
  double log_L_;
  bool log_decay_;
  std::vector<Component> comps_;
  std::vector<double> beta_;
  std::vector<double> beta_bar_;
  std::vector<double> B_;
  std::vector<double> log_space_;
  double beta_sum_ = 0.0;
  std::vector<double> gamma_;
  double S_log_ = 0.0;

  friend std::pair<double, double> update_prefactors_power(const ScalingHistory&, std::size_t);
  friend double update_prefactor_log(const ScalingHistory&);
};

/// (A_n, B_n) = (L^{n(alpha_n - alpha_bar_n)}, L^{n(beta_n - beta_bar_n)}) from the
/// latest recorded row of component c.
std::pair<double, double> update_prefactors_power(const ScalingHistory& h, std::size_t c = 0);

/// A_{u,n} = L^{1/2-gamma_1} prod_{k=2}^n (k/(k-1))^{gamma_n - gamma_k}, evaluated in
/// log space as exp[(1/2 - gamma_1) ln L + gamma_n ln n - S_log].
double update_prefactor_log(const ScalingHistory& h);

/// |x_n - x_{n-1}| < tol for the last `window` consecutive steps.
bool sequence_converged(std::span<const double> seq, double tol = 1e-4, std::size_t window = 20);

}  // namespace selfsim
