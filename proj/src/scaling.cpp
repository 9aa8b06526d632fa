// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "selfsim/scaling.hpp"

#include <cmath>

#include "selfsim/error.hpp"

namespace selfsim {

double BetaRule::operator()(double alpha) const noexcept {
  switch (kind_) {
    case Kind::Fixed: return parameter_;
    case Kind::UnscaledDiffusivity: return 0.5 * (1.0 - parameter_ * alpha);
  }
  return parameter_;
}

double beta_from_rule(const BetaRule& rule, double alpha) { return rule(alpha); }

double estimate_alpha(double norm_start, double norm_end, double L) {
  if (!(norm_start > 0.0) || !(norm_end > 0.0)) {
    throw Error(ErrorKind::ZeroNorm, "sup norms must be positive to estimate alpha");
  }
  if (!(L > 1.0)) throw Error(ErrorKind::InvalidArgument, "L must exceed 1");
  return std::log(norm_start / norm_end) / std::log(L);
}

double estimate_gamma(double norm_start, double norm_end, double L, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "gamma index starts at 1");
  if (n == 1) return estimate_alpha(norm_start, norm_end, L);
  if (!(norm_start > 0.0) || !(norm_end > 0.0)) {
    throw Error(ErrorKind::ZeroNorm, "sup norms must be positive to estimate gamma");
  }
  const double base = std::log(static_cast<double>(n) / static_cast<double>(n - 1));
  if (base == 0.0) throw Error(ErrorKind::DegenerateBase, "n/(n-1) rounds to 1");
  return (std::log(norm_start / norm_end) - 0.5 * std::log(L)) / base;
}

ScalingHistory::ScalingHistory(double L, std::size_t components, bool log_decay)
    : L_(L), log_L_(0.0), log_decay_(log_decay), comps_(components) {
  if (!(L > 1.0) || !std::isfinite(L)) throw Error(ErrorKind::InvalidArgument, "L must exceed 1");
  if (components == 0) throw Error(ErrorKind::InvalidArgument, "history needs a component");
  log_L_ = std::log(L);
}

void ScalingHistory::push_alpha(Component& comp, double alpha) {
  comp.alpha.push_back(alpha);
  comp.alpha_sum += alpha;
  comp.alpha_bar.push_back(comp.alpha_sum / static_cast<double>(comp.alpha.size()));
}

void ScalingHistory::record(std::span<const double> alphas, double beta) {
  if (log_decay_) throw Error(ErrorKind::InvalidArgument, "history is in log-decay mode");
  if (alphas.size() != comps_.size()) {
    throw Error(ErrorKind::InvalidArgument, "one alpha per component is required");
  }
  beta_.push_back(beta);
  beta_sum_ += beta;
  beta_bar_.push_back(beta_sum_ / static_cast<double>(beta_.size()));
  log_space_.push_back(beta_sum_ * log_L_);
  for (std::size_t c = 0; c < comps_.size(); ++c) {
    push_alpha(comps_[c], alphas[c]);
    comps_[c].log_amp.push_back(comps_[c].alpha_sum * log_L_);
  }
  for (std::size_t c = 0; c < comps_.size(); ++c) {
    comps_[c].prefactor.push_back(update_prefactors_power(*this, c).first);
  }
  B_.push_back(update_prefactors_power(*this, 0).second);
}

void ScalingHistory::record_log_decay(double gamma, std::span<const double> other_alphas,
                                      double beta) {
  if (!log_decay_) throw Error(ErrorKind::InvalidArgument, "history is in power-law mode");
  if (other_alphas.size() + 1 != comps_.size()) {
    throw Error(ErrorKind::InvalidArgument, "one alpha per non-log component is required");
  }
  const std::size_t n = beta_.size() + 1;
  beta_.push_back(beta);
  beta_sum_ += beta;
  beta_bar_.push_back(beta_sum_ / static_cast<double>(n));
  log_space_.push_back(beta_sum_ * log_L_);

  gamma_.push_back(gamma);
  Component& u = comps_[0];
  double log_factor = 0.0;
  if (n == 1) {
    log_factor = gamma * log_L_;
  } else {
    const double step = std::log(static_cast<double>(n) / static_cast<double>(n - 1));
    S_log_ += gamma * step;
    log_factor = 0.5 * log_L_ + gamma * step;
  }
  push_alpha(u, log_factor / log_L_);
  u.log_amp.push_back((u.log_amp.empty() ? 0.0 : u.log_amp.back()) + log_factor);

  for (std::size_t c = 1; c < comps_.size(); ++c) {
    push_alpha(comps_[c], other_alphas[c - 1]);
    comps_[c].log_amp.push_back(comps_[c].alpha_sum * log_L_);
  }
  u.prefactor.push_back(update_prefactor_log(*this));
  for (std::size_t c = 1; c < comps_.size(); ++c) {
    comps_[c].prefactor.push_back(update_prefactors_power(*this, c).first);
  }
  B_.push_back(update_prefactors_power(*this, 0).second);
}

double ScalingHistory::log_amplitude(std::size_t c, std::size_t n) const {
  const Component& comp = comps_.at(c);
  if (n > comp.log_amp.size()) throw Error(ErrorKind::InvalidArgument, "iteration not recorded");
  return n == 0 ? 0.0 : comp.log_amp[n - 1];
}

double ScalingHistory::log_space(std::size_t n) const {
  if (n > log_space_.size()) throw Error(ErrorKind::InvalidArgument, "iteration not recorded");
  return n == 0 ? 0.0 : log_space_[n - 1];
}

std::pair<double, double> update_prefactors_power(const ScalingHistory& h, std::size_t c) {
  const auto& comp = h.comps_.at(c);
  if (comp.alpha.empty()) throw Error(ErrorKind::InvalidArgument, "no iteration recorded");
  const double n = static_cast<double>(comp.alpha.size());
  const double A = std::exp(n * h.log_L_ * (comp.alpha.back() - comp.alpha_bar.back()));
  const double B = std::exp(n * h.log_L_ * (h.beta_.back() - h.beta_bar_.back()));
  return {A, B};
}

double update_prefactor_log(const ScalingHistory& h) {
  if (h.gamma_.empty()) throw Error(ErrorKind::InvalidArgument, "no gamma recorded");
  const double n = static_cast<double>(h.gamma_.size());
  const double g1 = h.gamma_.front();
  const double gn = h.gamma_.back();
  return std::exp((0.5 - g1) * h.log_L_ + gn * std::log(n) - h.S_log_);
}

bool sequence_converged(std::span<const double> seq, double tol, std::size_t window) {
  if (seq.size() < window + 1) return false;
  for (std::size_t i = seq.size() - window; i < seq.size(); ++i) {
    if (!(std::abs(seq[i] - seq[i - 1]) < tol)) return false;
  }
  return true;
}

}  // namespace selfsim
