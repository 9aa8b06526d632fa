// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "selfsim/grid.hpp"
#include "selfsim/scaling.hpp"

namespace selfsim {

/// Transport coefficient D(s) where s is the (scaled) time derivative u_t.
struct DiffusivityProfile {
  enum class Kind { Constant, Heaviside, Tanh, PiecewiseLinear };

  Kind kind = Kind::Constant;
  double epsilon = 0.0;  // jump: D -> 1 + epsilon where u decreases
  double sigma = 0.1;    // tanh width
  double delta = 0.1;    // half-width of the linear ramp

  double operator()(double s) const noexcept;
  bool is_constant() const noexcept { return kind == Kind::Constant || epsilon == 0.0; }
};

double diffusivity_eval(const DiffusivityProfile& profile, double s);

DiffusivityProfile::Kind parse_diffusivity_kind(const std::string& name);
const char* to_string(DiffusivityProfile::Kind kind) noexcept;

enum class ModelKind { Burgers, Kdv, Barenblatt, DiffusionAbsorption, Autocatalytic };

ModelKind parse_model_kind(const std::string& name);
const char* to_string(ModelKind kind) noexcept;

struct ModelSpec {
  ModelKind kind = ModelKind::Burgers;
  double nu = 0.01;          // Burgers viscosity
  double eps_disp_sq = 0.01;  // KdV dispersion epsilon^2
  double m = 0.0;            // diffusion nonlinearity (u^{m+1})_xx
  double p = 2.0;            // absorption / reaction exponent on u
  double q = 1.0;            // reaction exponent on v
  double lambda = 1.0;       // absorption coefficient
  double d = 1.0;            // diffusivity of the second species
  double c_sq = 1.0;         // KdV downstream level -6 c^2
  DiffusivityProfile diffusivity;
  BetaRule beta_rule = BetaRule::fixed(0.5);

  /// Throws Error(Config) on parameter combinations the model cannot run.
  void validate() const;
  std::size_t components() const noexcept { return kind == ModelKind::Autocatalytic ? 2 : 1; }
};

/// Prefactors of the scaled PDE solved during window n. Physical parameters
/// (nu, epsilon^2, lambda, d) are already folded in.
struct IterationCoefficients {
  double advection = 1.0;     // kappa_n: Burgers u u_x, KdV u u_x
  double diffusion = 1.0;     // nu_n, or the diffusion prefactor of u
  double diffusion_v = 1.0;   // second species
  double dispersion = 0.0;    // KdV u_xxx
  double diff_scale = 1.0;    // argument scale L^{-n(alpha_bar+1)} of D(u_t)
  double absorb_scale = 0.0;  // lambda L^{-n(alpha_bar(p-1)-1)}
  double reaction_u = 0.0;    // coefficient of -u^p v^q in the u equation
  double reaction_v = 0.0;    // coefficient of +u^p v^q in the v equation
};

/// Evaluated in log space from the amplitude/space factors recorded in `h`
/// for the first n iterations; n = 0 gives the unscaled PDE.
IterationCoefficients coefficients_for_iteration(const ModelSpec& spec, const ScalingHistory& h,
                                                 std::size_t n);

struct StepOptions {
  double blowup_guard = 1e6;
  bool clip_negative = true;
  /// Receives stability warnings and clipping notes. May be empty.
  std::function<void(const std::string&)> warn;
};

/// Steps needed to cover the scaled window [1, L]; the step is shrunk so the
/// last one lands exactly on L.
std::size_t window_steps(double L, double dt);

/// Three time levels u^k, u^{k-1}, u^{k-2} used by the backward-difference
/// estimate of u_t.
struct TimeLevels {
  Field current;
  Field previous;
  Field before_previous;

  /// u^{-1} = u^{-2} = u^0.
  static TimeLevels bootstrap(const Field& u);
  /// (3u^k - 4u^{k-1} + u^{k-2}) / (2 dt).
  Field time_derivative(double dt) const;
};

struct DiffusiveWindow {
  TimeLevels end;
  Field diffusivity;  // D at every node during the last step
  double dt = 0.0;    // step actually used
};

/// Forward Euler, conservative centered flux (u^2/2)_x, centered u_xx, periodic.
Field burgers_window(const Field& u0, const IterationCoefficients& co, double dt, double L,
                     const StepOptions& opt = {});

struct KdvBoundary {
  double left = 0.0;
  double right = -6.0;
};

struct KdvLevels {
  Field previous;
  Field current;
  double dt = 0.0;
};

/// Largest admissible dt/dx for the three-level KdV scheme.
double kdv_stability_ratio(double max_abs_u, double eps_sq_eff, double dx);

/// dx^3 / (2 eps^2): the dispersive mode of the scheme grows beyond about 0.70 dx^3 / eps^2
/// even when the ratio bound above holds. Infinite for eps = 0.
double kdv_dispersive_dt_limit(double eps_sq_eff, double dx);

/// Time step below both limits (exclusive).
double kdv_max_dt(double max_abs_u, double eps_sq_eff, double dx);

/// Three-level non-oscillatory explicit scheme; Dirichlet data held at both
/// ends, zero slope imposed at the right end through the outer ghost node.
KdvLevels kdv_window(const Field& u_prev, const Field& u_curr, const IterationCoefficients& co,
                     double dt, double L, KdvBoundary bc, const StepOptions& opt = {});

/// Crank-Nicolson with D frozen per step from the backward-difference u_t,
/// one periodic tridiagonal solve per step.
DiffusiveWindow barenblatt_window(const TimeLevels& start, const IterationCoefficients& co,
                                  double dt, double L, const DiffusivityProfile& profile,
                                  const StepOptions& opt = {});

/// Explicit Euler on D(u_t) (u^{m+1})_xx - absorb u^p, periodic.
DiffusiveWindow diffusion_absorption_window(const TimeLevels& start,
                                            const IterationCoefficients& co, double dt, double L,
                                            const ModelSpec& spec, const StepOptions& opt = {});

struct SpeciesPair {
  Field u;
  Field v;
};

/// Explicit Euler for u_t = Du u_xx - r_u u^p v^q, v_t = Dv v_xx + r_v u^p v^q, periodic.
SpeciesPair autocatalytic_window(const Field& u0, const Field& v0, const IterationCoefficients& co,
                                 double dt, double L, const ModelSpec& spec,
                                 const StepOptions& opt = {});

}  // namespace selfsim
