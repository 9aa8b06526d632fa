// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "selfsim/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "power.hpp"
#include "selfsim/error.hpp"
#include "selfsim/tridiagonal.hpp"

namespace selfsim {

double DiffusivityProfile::operator()(double s) const noexcept {
  switch (kind) {
    case Kind::Constant:
      return 1.0;
    case Kind::Heaviside:
      if (s < 0.0) return 1.0 + epsilon;
      if (s > 0.0) return 1.0;
      return 1.0 + 0.5 * epsilon;
    case Kind::Tanh:
      return 1.0 + epsilon * 0.5 * (1.0 + std::tanh(-s / sigma));
    case Kind::PiecewiseLinear:
      if (s <= -delta) return 1.0 + epsilon;
      if (s >= delta) return 1.0;
      return 1.0 - epsilon / (2.0 * delta) * (s - delta);
  }
  return 1.0;
}

double diffusivity_eval(const DiffusivityProfile& profile, double s) { return profile(s); }

DiffusivityProfile::Kind parse_diffusivity_kind(const std::string& name) {
  using K = DiffusivityProfile::Kind;
  if (name == "constant") return K::Constant;
  if (name == "heaviside") return K::Heaviside;
  if (name == "tanh" || name == "tanh_profile") return K::Tanh;
  if (name == "piecewise" || name == "piecewise_linear") return K::PiecewiseLinear;
  throw Error(ErrorKind::Config, "unknown diffusivity '" + name + "'");
}

const char* to_string(DiffusivityProfile::Kind kind) noexcept {
  using K = DiffusivityProfile::Kind;
  switch (kind) {
    case K::Constant: return "constant";
    case K::Heaviside: return "heaviside";
    case K::Tanh: return "tanh";
    case K::PiecewiseLinear: return "piecewise_linear";
  }
  return "constant";
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "burgers") return ModelKind::Burgers;
  if (name == "kdv") return ModelKind::Kdv;
  if (name == "barenblatt") return ModelKind::Barenblatt;
  if (name == "diffusion_absorption") return ModelKind::DiffusionAbsorption;
  if (name == "autocatalytic") return ModelKind::Autocatalytic;
  throw Error(ErrorKind::Config, "unknown model '" + name + "'");
}

const char* to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::Burgers: return "burgers";
    case ModelKind::Kdv: return "kdv";
    case ModelKind::Barenblatt: return "barenblatt";
    case ModelKind::DiffusionAbsorption: return "diffusion_absorption";
    case ModelKind::Autocatalytic: return "autocatalytic";
  }
  return "burgers";
}

void ModelSpec::validate() const {
  auto finite = [](double v, const char* name) {
    if (!std::isfinite(v)) throw Error(ErrorKind::Config, std::string(name) + " must be finite");
  };
  finite(nu, "model.nu");
  finite(eps_disp_sq, "model.eps_disp_sq");
  finite(m, "model.m");
  finite(p, "model.p");
  finite(q, "model.q");
  finite(lambda, "model.lambda");
  finite(d, "model.d");
  finite(c_sq, "model.c_sq");
  if (nu < 0.0) throw Error(ErrorKind::Config, "model.nu must be >= 0");
  if (eps_disp_sq < 0.0) throw Error(ErrorKind::Config, "model.eps_disp_sq must be >= 0");
  if (m < 0.0) throw Error(ErrorKind::Config, "model.m must be >= 0");
  if (!(d > 0.0)) throw Error(ErrorKind::Config, "model.d must be > 0");
  if (diffusivity.kind == DiffusivityProfile::Kind::Tanh && !(diffusivity.sigma > 0.0)) {
    throw Error(ErrorKind::Config, "model.sigma must be > 0");
  }
  if (diffusivity.kind == DiffusivityProfile::Kind::PiecewiseLinear && !(diffusivity.delta > 0.0)) {
    throw Error(ErrorKind::Config, "model.delta must be > 0");
  }
  if (!(1.0 + diffusivity.epsilon > 0.0)) {
    throw Error(ErrorKind::Config, "model.epsilon must exceed -1");
  }
  if (kind == ModelKind::Autocatalytic) {
    constexpr double tol = 1e-12;
    if (std::abs(p + q - 3.0) > tol || p < 1.0 - tol || p > 2.0 + tol || q < 1.0 - tol ||
        q > 2.0 + tol) {
      throw Error(ErrorKind::Config, "autocatalytic model needs p + q = 3 with 1 <= p, q <= 2");
    }
  }
  if (kind == ModelKind::DiffusionAbsorption && p < 0.0) {
    throw Error(ErrorKind::Config, "model.p must be >= 0");
  }
}

IterationCoefficients coefficients_for_iteration(const ModelSpec& spec, const ScalingHistory& h,
                                                 std::size_t n) {
  const double nl = static_cast<double>(n) * h.log_L();
  const double la = h.log_amplitude(0, n);
  const double lb = h.log_space(n);
  IterationCoefficients co;
  switch (spec.kind) {
    case ModelKind::Burgers:
      co.advection = std::exp(nl - la - lb);
      co.diffusion = spec.nu * std::exp(nl - 2.0 * lb);
      break;
    case ModelKind::Kdv:
      co.advection = std::exp(nl - la - lb);
      co.diffusion = 0.0;
      co.dispersion = spec.eps_disp_sq * std::exp(nl - 3.0 * lb);
      break;
    case ModelKind::Barenblatt:
      co.diffusion = std::exp(nl - 2.0 * lb);
      co.diff_scale = std::exp(-la - nl);
      break;
    case ModelKind::DiffusionAbsorption:
      co.diffusion = std::exp(nl - spec.m * la - 2.0 * lb);
      co.diff_scale = std::exp(-la - nl);
      co.absorb_scale = spec.lambda * std::exp(nl + (1.0 - spec.p) * la);
      break;
    case ModelKind::Autocatalytic: {
      const double lv = h.log_amplitude(1, n);
      co.diffusion = std::exp(nl - 2.0 * lb);
      co.diffusion_v = spec.d * co.diffusion;
      co.reaction_u = std::exp(nl + (1.0 - spec.p) * la - spec.q * lv);
      co.reaction_v = std::exp(nl - spec.p * la + (1.0 - spec.q) * lv);
      break;
    }
  }
  return co;
}

std::size_t window_steps(double L, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidArgument, "dt must be > 0");
  if (!(L > 1.0)) throw Error(ErrorKind::InvalidArgument, "L must exceed 1");
  const double steps = std::round((L - 1.0) / dt);
  return steps < 1.0 ? 1 : static_cast<std::size_t>(steps);
}

TimeLevels TimeLevels::bootstrap(const Field& u) { return {u, u, u}; }

Field TimeLevels::time_derivative(double dt) const {
  Field out(current.grid());
  const double inv = 1.0 / (2.0 * dt);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (3.0 * current[i] - 4.0 * previous[i] + before_previous[i]) * inv;
  }
  return out;
}

namespace {

// Calls f(i, i-1, i+1) over the periodic nodes 0..m-1 with wrap-around.
template <class F>
inline void for_periodic(std::size_t m, F&& f) {
  f(std::size_t{0}, m - 1, std::size_t{1});
  for (std::size_t i = 1; i + 1 < m; ++i) f(i, i - 1, i + 1);
  f(m - 1, m - 2, std::size_t{0});
}

void guard(std::span<const double> v, double limit, const char* model) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i]) || std::abs(v[i]) > limit) {
      throw Error(ErrorKind::Unstable, std::string(model) + " solution exceeded the blow-up guard at node " +
                                           std::to_string(i));
    }
  }
}

void warn(const StepOptions& opt, const std::string& msg) {
  if (opt.warn) opt.warn(msg);
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Clips negatives to zero; returns the most negative value seen.
double clip_or_check(std::span<double> v, const StepOptions& opt, const char* name) {
  double low = 0.0;
  for (double& x : v) {
    if (x < 0.0) {
      low = std::min(low, x);
      if (opt.clip_negative) x = 0.0;
    }
  }
  if (!opt.clip_negative && low < -1e-8) {
    throw Error(ErrorKind::NegativeConcentration,
                std::string(name) + " dropped to " + format_real(low));
  }
  return low;
}

constexpr std::size_t kGuardStride = 16;

}  // namespace

Field burgers_window(const Field& u0, const IterationCoefficients& co, double dt, double L,
                     const StepOptions& opt) {
  u0.check_finite();
  const std::size_t steps = window_steps(L, dt);
  const double h = (L - 1.0) / static_cast<double>(steps);
  const double dx = u0.grid().dx();
  if (h * co.diffusion / (dx * dx) > 0.5) {
    warn(opt, "burgers: diffusive step ratio " + format_real(h * co.diffusion / (dx * dx)) +
                  " exceeds 1/2");
  }
  const std::size_t m = u0.size() - 1;
  const double a = co.advection * h / (4.0 * dx);
  const double b = co.diffusion * h / (dx * dx);

  std::vector<double> u(u0.values().begin(), u0.values().end());
  std::vector<double> next(u.size());
  for (std::size_t k = 0; k < steps; ++k) {
    for_periodic(m, [&](std::size_t i, std::size_t im, std::size_t ip) {
      next[i] = u[i] - a * (u[ip] * u[ip] - u[im] * u[im]) + b * (u[ip] - 2.0 * u[i] + u[im]);
    });
    next[m] = next[0];
    u.swap(next);
    if ((k + 1) % kGuardStride == 0 || k + 1 == steps) guard(u, opt.blowup_guard, "burgers");
  }
  return Field(u0.grid(), std::move(u));
}

double kdv_stability_ratio(double max_abs_u, double eps_sq_eff, double dx) {
  if (!(dx > 0.0)) throw Error(ErrorKind::InvalidArgument, "dx must be > 0");
  return 2.0 / (std::abs(max_abs_u) + 4.0 * eps_sq_eff / dx);
}

double kdv_dispersive_dt_limit(double eps_sq_eff, double dx) {
  if (!(dx > 0.0)) throw Error(ErrorKind::InvalidArgument, "dx must be > 0");
  if (!(eps_sq_eff > 0.0)) return std::numeric_limits<double>::infinity();
  return dx * dx * dx / (2.0 * eps_sq_eff);
}

double kdv_max_dt(double max_abs_u, double eps_sq_eff, double dx) {
  return std::min(kdv_stability_ratio(max_abs_u, eps_sq_eff, dx) * dx,
                  kdv_dispersive_dt_limit(eps_sq_eff, dx));
}

KdvLevels kdv_window(const Field& u_prev, const Field& u_curr, const IterationCoefficients& co,
                     double dt, double L, KdvBoundary bc, const StepOptions& opt) {
  u_prev.check_finite();
  u_curr.check_finite();
  const std::size_t steps = window_steps(L, dt);
  const double h = (L - 1.0) / static_cast<double>(steps);
  const double dx = u_curr.grid().dx();
  const double max_dt = kdv_max_dt(co.advection * max_abs(u_curr.values()), co.dispersion, dx);
  if (!(h < max_dt)) {
    warn(opt, "kdv: dt = " + format_real(h) + " violates the stability limit " + format_real(max_dt));
  }
  const std::size_t n = u_curr.size();
  // Two ghost nodes on the right: Dirichlet value, then zero slope.
  std::vector<double> prev(n + 2), cur(n + 2), next(n + 2);
  std::copy(u_prev.values().begin(), u_prev.values().end(), prev.begin());
  std::copy(u_curr.values().begin(), u_curr.values().end(), cur.begin());
  prev[n] = prev[n + 1] = bc.right;
  cur[n] = cur[n + 1] = bc.right;

  const double adv = co.advection * 2.0 * h / (3.0 * 2.0 * dx);
  const double disp = co.dispersion * 2.0 * h / (2.0 * dx * dx * dx);
  for (std::size_t k = 0; k < steps; ++k) {
    next[0] = bc.left;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const std::size_t j = i + 1;
      const double ubar = cur[j + 1] + cur[j] + cur[j - 1];
      const double rhs = -adv * ubar * (cur[j + 1] - cur[j - 1]) -
                         disp * (cur[j + 2] - 2.0 * cur[j + 1] + 2.0 * cur[j - 1] - cur[j - 2]);
      next[i] = cur[i] - (cur[j + 1] - prev[j + 1]) + rhs;
    }
    next[n - 1] = bc.right;
    next[n] = next[n + 1] = bc.right;
    prev.swap(cur);
    cur.swap(next);
    if ((k + 1) % kGuardStride == 0 || k + 1 == steps) {
      guard(std::span<const double>(cur.data(), n), opt.blowup_guard, "kdv");
    }
  }
  prev.resize(n);
  cur.resize(n);
  return {Field(u_curr.grid(), std::move(prev)), Field(u_curr.grid(), std::move(cur)), h};
}

DiffusiveWindow barenblatt_window(const TimeLevels& start, const IterationCoefficients& co,
                                  double dt, double L, const DiffusivityProfile& profile,
                                  const StepOptions& opt) {
  start.current.check_finite();
  const std::size_t steps = window_steps(L, dt);
  const double h = (L - 1.0) / static_cast<double>(steps);
  const Grid& g = start.current.grid();
  const double dx = g.dx();
  const std::size_t m = g.size() - 1;

  std::vector<double> u0(start.before_previous.values().begin(), start.before_previous.values().end());
  std::vector<double> u1(start.previous.values().begin(), start.previous.values().end());
  std::vector<double> u2(start.current.values().begin(), start.current.values().end());
  std::vector<double> D(g.size(), 1.0);
  std::vector<double> lower(m), diag(m), upper(m), rhs(m);
  const double inv2h = 1.0 / (2.0 * h);
  const double c = co.diffusion * h / (2.0 * dx * dx);

  for (std::size_t k = 0; k < steps; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      D[i] = profile(co.diff_scale * (3.0 * u2[i] - 4.0 * u1[i] + u0[i]) * inv2h);
    }
    D[m] = D[0];
    for_periodic(m, [&](std::size_t i, std::size_t im, std::size_t ip) {
      const double r = c * D[i];
      lower[i] = -r;
      upper[i] = -r;
      diag[i] = 1.0 + 2.0 * r;
      rhs[i] = u2[i] + r * (u2[im] - 2.0 * u2[i] + u2[ip]);
    });
    solve_cyclic_tridiagonal(lower, diag, upper, rhs);
    u0.swap(u1);
    u1.swap(u2);
    std::copy(rhs.begin(), rhs.end(), u2.begin());
    u2[m] = u2[0];
    if ((k + 1) % kGuardStride == 0 || k + 1 == steps) guard(u2, opt.blowup_guard, "barenblatt");
  }
  DiffusiveWindow out{{Field(g, std::move(u2)), Field(g, std::move(u1)), Field(g, std::move(u0))},
                      Field(g, std::move(D)), h};
  return out;
}

DiffusiveWindow diffusion_absorption_window(const TimeLevels& start,
                                            const IterationCoefficients& co, double dt, double L,
                                            const ModelSpec& spec, const StepOptions& opt) {
  start.current.check_finite();
  const std::size_t steps = window_steps(L, dt);
  const double h = (L - 1.0) / static_cast<double>(steps);
  const Grid& g = start.current.grid();
  const double dx = g.dx();
  const std::size_t m = g.size() - 1;
  const detail::Power flux_pow(spec.m + 1.0);
  const detail::Power abs_pow(spec.p);
  const DiffusivityProfile& profile = spec.diffusivity;

  std::vector<double> u0(start.before_previous.values().begin(), start.before_previous.values().end());
  std::vector<double> u1(start.previous.values().begin(), start.previous.values().end());
  std::vector<double> u2(start.current.values().begin(), start.current.values().end());
  clip_or_check(u2, opt, "diffusion_absorption u");

  const double max_d = std::max(1.0, 1.0 + spec.diffusivity.epsilon);
  const double umax = max_abs(u2);
  const double eff = co.diffusion * max_d * (spec.m + 1.0) * std::pow(umax, spec.m);
  if (h * eff / (dx * dx) > 0.5) {
    warn(opt, "diffusion_absorption: diffusive step ratio " + format_real(h * eff / (dx * dx)) +
                  " exceeds 1/2");
  }

  std::vector<double> D(g.size(), 1.0);
  std::vector<double> w(g.size());
  std::vector<double> next(g.size());
  const double inv2h = 1.0 / (2.0 * h);
  const double b = co.diffusion * h / (dx * dx);
  const double ab = co.absorb_scale * h;
  const bool constant_d = profile.kind == DiffusivityProfile::Kind::Constant;
  double low = 0.0;

  for (std::size_t k = 0; k < steps; ++k) {
    if (!constant_d) {
      for (std::size_t i = 0; i < m; ++i) {
        D[i] = profile(co.diff_scale * (3.0 * u2[i] - 4.0 * u1[i] + u0[i]) * inv2h);
      }
      D[m] = D[0];
    }
    for (std::size_t i = 0; i < m; ++i) w[i] = flux_pow(u2[i]);
    for_periodic(m, [&](std::size_t i, std::size_t im, std::size_t ip) {
      next[i] = u2[i] + b * D[i] * (w[ip] - 2.0 * w[i] + w[im]);
    });
    if (ab != 0.0) {
      for (std::size_t i = 0; i < m; ++i) next[i] -= ab * abs_pow(u2[i]);
    }
    next[m] = next[0];
    low = std::min(low, clip_or_check(next, opt, "diffusion_absorption u"));
    u0.swap(u1);
    u1.swap(u2);
    u2.swap(next);
    if ((k + 1) % kGuardStride == 0 || k + 1 == steps) {
      guard(u2, opt.blowup_guard, "diffusion_absorption");
    }
  }
  if (low < -1e-8) {
    warn(opt, "diffusion_absorption: clipped negative undershoot down to " + format_real(low));
  }
  DiffusiveWindow out{{Field(g, std::move(u2)), Field(g, std::move(u1)), Field(g, std::move(u0))},
                      Field(g, std::move(D)), h};
  return out;
}

SpeciesPair autocatalytic_window(const Field& u0, const Field& v0, const IterationCoefficients& co,
                                 double dt, double L, const ModelSpec& spec,
                                 const StepOptions& opt) {
  u0.check_finite();
  v0.check_finite();
  if (!(u0.grid() == v0.grid())) throw Error(ErrorKind::InvalidArgument, "species grids differ");
  const std::size_t steps = window_steps(L, dt);
  const double h = (L - 1.0) / static_cast<double>(steps);
  const Grid& g = u0.grid();
  const double dx = g.dx();
  const std::size_t m = g.size() - 1;
  const double ratio = h * std::max(co.diffusion, co.diffusion_v) / (dx * dx);
  if (ratio > 0.5) {
    warn(opt, "autocatalytic: diffusive step ratio " + format_real(ratio) + " exceeds 1/2");
  }
  const detail::Power pu(spec.p);
  const detail::Power pv(spec.q);

  std::vector<double> u(u0.values().begin(), u0.values().end());
  std::vector<double> v(v0.values().begin(), v0.values().end());
  clip_or_check(u, opt, "autocatalytic u");
  clip_or_check(v, opt, "autocatalytic v");
  std::vector<double> un(g.size()), vn(g.size()), R(g.size());
  const double bu = co.diffusion * h / (dx * dx);
  const double bv = co.diffusion_v * h / (dx * dx);
  const double ru = co.reaction_u * h;
  const double rv = co.reaction_v * h;
  double low = 0.0;

  for (std::size_t k = 0; k < steps; ++k) {
    for (std::size_t i = 0; i < m; ++i) R[i] = pu(u[i]) * pv(v[i]);
    for_periodic(m, [&](std::size_t i, std::size_t im, std::size_t ip) {
      un[i] = u[i] + bu * (u[ip] - 2.0 * u[i] + u[im]) - ru * R[i];
      vn[i] = v[i] + bv * (v[ip] - 2.0 * v[i] + v[im]) + rv * R[i];
    });
    un[m] = un[0];
    vn[m] = vn[0];
    low = std::min(low, clip_or_check(un, opt, "autocatalytic u"));
    low = std::min(low, clip_or_check(vn, opt, "autocatalytic v"));
    u.swap(un);
    v.swap(vn);
    if ((k + 1) % kGuardStride == 0 || k + 1 == steps) {
      guard(u, opt.blowup_guard, "autocatalytic");
      guard(v, opt.blowup_guard, "autocatalytic");
    }
  }
  if (low < -1e-8) {
    warn(opt, "autocatalytic: clipped negative undershoot down to " + format_real(low));
  }
  return {Field(g, std::move(u)), Field(g, std::move(v))};
}

}  // namespace selfsim
