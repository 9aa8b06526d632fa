// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "selfsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <span>
#include <thread>
#include <tuple>

namespace selfsim {

double InitialCondition::operator()(double x) const noexcept {
  switch (kind) {
    case Kind::Indicator:
      return std::abs(x) <= ell ? 1.0 : 0.0;
    case Kind::OddStep:
      if (x >= -ell && x <= 0.0) return -1.0;
      if (x > 0.0 && x <= ell) return 1.0;
      return 0.0;
    case Kind::CosineBump:
      return std::abs(x) <= 0.5 * std::numbers::pi ? std::cos(x) : 0.0;
    case Kind::TanhStep:
      return -0.5 * jump * (1.0 + std::tanh((x - x0) / width));
    case Kind::Gaussian:
      return std::exp(-x * x / (4.0 * width));
  }
  return 0.0;
}

InitialCondition::Kind parse_initial_kind(const std::string& name) {
  using K = InitialCondition::Kind;
  if (name == "indicator") return K::Indicator;
  if (name == "odd_step") return K::OddStep;
  if (name == "cosine_bump") return K::CosineBump;
  if (name == "tanh_step") return K::TanhStep;
  if (name == "gaussian") return K::Gaussian;
  throw Error(ErrorKind::Config, "unknown initial condition '" + name + "'");
}

const char* to_string(InitialCondition::Kind kind) noexcept {
  using K = InitialCondition::Kind;
  switch (kind) {
    case K::Indicator: return "indicator";
    case K::OddStep: return "odd_step";
    case K::CosineBump: return "cosine_bump";
    case K::TanhStep: return "tanh_step";
    case K::Gaussian: return "gaussian";
  }
  return "indicator";
}

RgMode parse_mode(const std::string& name) {
  if (name == "power_law") return RgMode::PowerLaw;
  if (name == "log_decay") return RgMode::LogDecay;
  throw Error(ErrorKind::Config, "unknown mode '" + name + "'");
}

const char* to_string(RgMode mode) noexcept {
  return mode == RgMode::PowerLaw ? "power_law" : "log_decay";
}

void ExperimentConfig::validate() const {
  model.validate();
  if (!(L > 1.0) || !std::isfinite(L)) throw Error(ErrorKind::Config, "rg.L must exceed 1");
  if (iterations == 0) throw Error(ErrorKind::Config, "rg.iterations must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::Config, "rg.dt must be positive");
  if (!(blowup_guard > 0.0)) throw Error(ErrorKind::Config, "rg.blowup_guard must be positive");
  if (!(kdv_safety > 0.0 && kdv_safety <= 1.0)) {
    throw Error(ErrorKind::Config, "rg.kdv_safety must lie in (0, 1]");
  }
  if (mode == RgMode::LogDecay) {
    if (model.kind != ModelKind::Autocatalytic) {
      throw Error(ErrorKind::Config, "rg.mode = log_decay requires model.kind = autocatalytic");
    }
    if (model.beta_rule.kind() != BetaRule::Kind::Fixed || model.beta_rule.parameter() != 0.5) {
      throw Error(ErrorKind::Config, "rg.mode = log_decay requires model.beta = 0.5");
    }
    if (!(model.p > 1.0 && model.p < 2.0)) {
      throw Error(ErrorKind::Config, "rg.mode = log_decay requires 1 < model.p < 2");
    }
  }
  if (symmetrize && !grid.symmetric()) {
    throw Error(ErrorKind::Config, "rg.symmetrize needs grid.x_min = -grid.x_max and odd grid.n_points");
  }
  if (initial.kind == InitialCondition::Kind::TanhStep && !(initial.width > 0.0)) {
    throw Error(ErrorKind::Config, "initial.width must be positive");
  }
  if (initial.kind == InitialCondition::Kind::Gaussian && !(initial.width > 0.0)) {
    throw Error(ErrorKind::Config, "initial.width must be positive");
  }
}

void set_parameter(ExperimentConfig& cfg, const std::string& name, double value) {
  const auto dot = name.find('.');
  const std::string key = dot == std::string::npos ? name : name.substr(dot + 1);
  ModelSpec& m = cfg.model;
  if (key == "nu") m.nu = value;
  else if (key == "eps_disp_sq") m.eps_disp_sq = value;
  else if (key == "m") m.m = value;
  else if (key == "p") m.p = value;
  else if (key == "q") m.q = value;
  else if (key == "lambda") m.lambda = value;
  else if (key == "d") m.d = value;
  else if (key == "c_sq") m.c_sq = value;
  else if (key == "epsilon") m.diffusivity.epsilon = value;
  else if (key == "sigma") m.diffusivity.sigma = value;
  else if (key == "delta") m.diffusivity.delta = value;
  else if (key == "beta") m.beta_rule = BetaRule::fixed(value);
  else if (key == "L") cfg.L = value;
  else if (key == "dt") cfg.dt = value;
  else if (key == "ell") cfg.initial.ell = value;
  else if (key == "iterations") {
    if (!(value >= 1.0) || value != std::floor(value)) {
      throw Error(ErrorKind::Config, "iterations must be a positive integer");
    }
    cfg.iterations = static_cast<std::size_t>(value);
  } else {
    throw Error(ErrorKind::Config, "unknown sweep parameter '" + name + "'");
  }
}

RgState initial_state(const ExperimentConfig& cfg) {
  cfg.validate();
  const bool log_mode = cfg.mode == RgMode::LogDecay;
  RgState s{ScalingHistory(cfg.L, cfg.model.components(), log_mode), cfg.initial.on(cfg.grid),
            std::nullopt};
  if (cfg.model.kind == ModelKind::Kdv) {
    // The step height follows the downstream level -6 c^2.
    InitialCondition ic = cfg.initial;
    if (ic.kind == InitialCondition::Kind::TanhStep) ic.jump = 6.0 * cfg.model.c_sq;
    s.u = ic.on(cfg.grid);
  }
  if (cfg.model.components() == 2) s.v = cfg.initial.on(cfg.grid);
  return s;
}

RgRunner::RgRunner(ExperimentConfig cfg) : RgRunner(cfg, initial_state(cfg)) {}

RgRunner::RgRunner(ExperimentConfig cfg, RgState state)
    : cfg_(std::move(cfg)),
      state_(std::move(state)),
      report_{state_.history, state_.u, state_.v, {}, {}, {}, 0, std::nullopt, {}, std::nullopt, {}, {}} {
  cfg_.validate();
  if (!(state_.u.grid() == cfg_.grid)) throw Error(ErrorKind::Config, "state grid differs from config");
  opt_.blowup_guard = cfg_.blowup_guard;
  opt_.clip_negative = cfg_.clip_negative;
  opt_.warn = [this](const std::string& msg) { warn(msg); };
  kdv_bc_ = {state_.u[0], state_.u[state_.u.size() - 1]};
  if (state_.history.iterations() == 0) take_snapshot();
}

void RgRunner::warn(const std::string& msg) {
  ++report_.warning_count;
  if (report_.warnings.size() < 50) report_.warnings.push_back(msg);
}

void RgRunner::take_snapshot() {
  const std::size_t n = state_.history.iterations();
  if (std::find(cfg_.snapshot_at.begin(), cfg_.snapshot_at.end(), n) == cfg_.snapshot_at.end()) {
    return;
  }
  Snapshot s{n, state_.u, state_.v, 0.0, 0.0};
  if (n > 0) {
    s.alpha_bar = state_.history.alpha_bar(0).back();
    s.beta_bar = state_.history.beta_bar().back();
  }
  report_.snapshots.push_back(std::move(s));
}

void RgRunner::advance(std::size_t k) {
  for (std::size_t i = 0; i < k && !failed(); ++i) {
    try {
      step();
      take_snapshot();
    } catch (const Error& e) {
      report_.failure = e;
    }
  }
}

void RgRunner::step() {
  const ModelSpec& spec = cfg_.model;
  ScalingHistory& h = state_.history;
  const std::size_t n = h.iterations();
  const IterationCoefficients co = coefficients_for_iteration(spec, h, n);
  if (spec.kind == ModelKind::Kdv) {
    step_kdv(co);
    return;
  }
  const double L = cfg_.L;
  const double lnL = std::log(L);

  const double s0u = sup_norm(state_.u);
  Field u_end = state_.u;
  std::optional<Field> v_end;
  double s0v = 0.0;
  std::optional<Field> diffusivity;

  switch (spec.kind) {
    case ModelKind::Burgers:
      u_end = burgers_window(state_.u, co, cfg_.dt, L, opt_);
      break;
    case ModelKind::Barenblatt:
    case ModelKind::DiffusionAbsorption: {
      const TimeLevels start = TimeLevels::bootstrap(state_.u);
      DiffusiveWindow w = spec.kind == ModelKind::Barenblatt
                              ? barenblatt_window(start, co, cfg_.dt, L, spec.diffusivity, opt_)
                              : diffusion_absorption_window(start, co, cfg_.dt, L, spec, opt_);
      u_end = std::move(w.end.current);
      diffusivity = std::move(w.diffusivity);
      break;
    }
    case ModelKind::Autocatalytic: {
      s0v = sup_norm(*state_.v);
      SpeciesPair pair = autocatalytic_window(state_.u, *state_.v, co, cfg_.dt, L, spec, opt_);
      u_end = std::move(pair.u);
      v_end = std::move(pair.v);
      break;
    }
    case ModelKind::Kdv:
      break;
  }

  const double s1u = sup_norm(u_end);
  const double alpha_u = estimate_alpha(s0u, s1u, L);
  const double beta = spec.beta_rule(alpha_u);
  const double space = std::exp(beta * lnL);
  const bool log_mode = cfg_.mode == RgMode::LogDecay;

  // Resample, then either normalize or apply the measured factor; returns ln(factor).
  auto rescale = [&](const Field& end, double measured_log_factor, Field& out) {
    Field r = rescale_resample(end, space, cfg_.interpolation, 0.0, 0.0);
    if (cfg_.symmetrize) r = symmetrize_odd(r);
    if (cfg_.normalize) {
      auto [f, s] = normalize_amplitude(r);
      out = std::move(f);
      return -std::log(s);
    }
    r *= std::exp(measured_log_factor);
    r.check_finite();
    out = std::move(r);
    return measured_log_factor;
  };

  const std::size_t n1 = n + 1;
  Field u_next = u_end;
  double log_fu = 0.0;
  double gamma = 0.0;
  if (log_mode) {
    const double measured_gamma = estimate_gamma(s0u, s1u, L, static_cast<int>(n1));
    const double step_log = n1 == 1 ? 0.0 : std::log(static_cast<double>(n1) / static_cast<double>(n));
    const double measured = n1 == 1 ? measured_gamma * lnL : 0.5 * lnL + measured_gamma * step_log;
    log_fu = rescale(u_end, measured, u_next);
    gamma = n1 == 1 ? log_fu / lnL : (log_fu - 0.5 * lnL) / step_log;
  } else {
    log_fu = rescale(u_end, alpha_u * lnL, u_next);
  }

  std::optional<Field> v_next;
  double alpha_v_applied = 0.0;
  if (v_end) {
    const double s1v = sup_norm(*v_end);
    const double alpha_v = estimate_alpha(s0v, s1v, L);
    Field vn = *v_end;
    alpha_v_applied = rescale(*v_end, alpha_v * lnL, vn) / lnL;
    v_next = std::move(vn);
    report_.end_sup_v.push_back(s1v);
  }
  report_.end_sup_u.push_back(s1u);

  if (log_mode) {
    const double others[1] = {alpha_v_applied};
    h.record_log_decay(gamma, std::span<const double>(others, 1), beta);
  } else if (v_next) {
    const double alphas[2] = {log_fu / lnL, alpha_v_applied};
    h.record(std::span<const double>(alphas, 2), beta);
  } else {
    const double alphas[1] = {log_fu / lnL};
    h.record(std::span<const double>(alphas, 1), beta);
  }
  report_.coefficients.push_back(co);
  state_.u = std::move(u_next);
  state_.v = std::move(v_next);
  if (diffusivity) report_.diffusivity = std::move(diffusivity);
}

void RgRunner::step_kdv(const IterationCoefficients& co) {
  const double L = cfg_.L;
  const double dx = cfg_.grid.dx();
  const Field& u = state_.u;
  double max_u = 0.0;
  for (double x : u.values()) max_u = std::max(max_u, std::abs(x));
  const double max_dt = kdv_max_dt(co.advection * max_u, co.dispersion, dx);
  std::size_t steps = window_steps(L, cfg_.dt);
  double hstep = (L - 1.0) / static_cast<double>(steps);
  if (!(hstep < max_dt)) {
    steps = static_cast<std::size_t>(std::ceil((L - 1.0) / (cfg_.kdv_safety * max_dt)));
    hstep = (L - 1.0) / static_cast<double>(steps);
    warn("kdv: dt reduced to " + format_real(hstep) + " to stay below " + format_real(max_dt));
  }
  KdvLevels lv = kdv_window(u, u, co, hstep, L, kdv_bc_, opt_);

  const double beta = cfg_.model.beta_rule(0.0);
  const double space = std::exp(beta * std::log(L));
  Field u_next = rescale_resample(lv.current, space, cfg_.interpolation, kdv_bc_.left, kdv_bc_.right);
  u_next[0] = kdv_bc_.left;
  u_next[u_next.size() - 1] = kdv_bc_.right;

  report_.end_sup_u.push_back(sup_norm(lv.current));
  const double alphas[1] = {0.0};
  state_.history.record(std::span<const double>(alphas, 1), beta);
  report_.coefficients.push_back(co);
  state_.u = std::move(u_next);
}

RgReport RgRunner::report() const {
  RgReport r = report_;
  r.history = state_.history;
  r.final_u = state_.u;
  r.final_v = state_.v;
  const ScalingHistory& h = state_.history;
  if (h.iterations() > 0) {
    r.converged.alpha = sequence_converged(h.alpha(0));
    r.converged.beta = sequence_converged(h.beta());
    if (h.log_decay()) r.converged.gamma = sequence_converged(h.gamma());
    if (h.components() > 1) r.converged.alpha_v = sequence_converged(h.alpha(1));
  }
  return r;
}

Field kdv_direct_simulation(const ExperimentConfig& cfg, double t_end) {
  if (cfg.model.kind != ModelKind::Kdv) {
    throw Error(ErrorKind::Config, "direct simulation is only provided for kdv");
  }
  if (!(t_end > 1.0)) throw Error(ErrorKind::InvalidArgument, "t_end must exceed 1");
  const RgState s = initial_state(cfg);
  const ScalingHistory fresh(cfg.L, 1, false);
  const IterationCoefficients co = coefficients_for_iteration(cfg.model, fresh, 0);
  double max_u = 0.0;
  for (double x : s.u.values()) max_u = std::max(max_u, std::abs(x));
  const double limit = cfg.kdv_safety * kdv_max_dt(co.advection * max_u, co.dispersion, cfg.grid.dx());
  const double dt = std::min(cfg.dt, limit);
  StepOptions opt;
  opt.blowup_guard = cfg.blowup_guard;
  const KdvBoundary bc{s.u[0], s.u[s.u.size() - 1]};
  return kdv_window(s.u, s.u, co, dt, t_end, bc, opt).current;
}

RgReport run_algorithm1(const ExperimentConfig& cfg) {
  if (cfg.mode != RgMode::PowerLaw) {
    throw Error(ErrorKind::Config, "power-law loop requested with rg.mode = log_decay");
  }
  RgRunner runner(cfg);
  runner.run();
  return runner.report();
}

RgReport run_algorithm2(const ExperimentConfig& cfg) {
  if (cfg.mode != RgMode::LogDecay) {
    throw Error(ErrorKind::Config, "log-decay loop requested with rg.mode = power_law");
  }
  RgRunner runner(cfg);
  runner.run();
  return runner.report();
}

RgReport run_experiment(const ExperimentConfig& cfg) {
  return cfg.mode == RgMode::LogDecay ? run_algorithm2(cfg) : run_algorithm1(cfg);
}

std::vector<SweepPoint> sweep(const ExperimentConfig& base, const std::string& parameter,
                              const std::vector<double>& values, unsigned jobs) {
  std::vector<SweepPoint> out(values.size());
  if (values.empty()) return out;
  {
    // Reject unknown names before spawning anything.
    ExperimentConfig probe = base;
    set_parameter(probe, parameter, values.front());
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      out[i].value = values[i];
      try {
        ExperimentConfig cfg = base;
        set_parameter(cfg, parameter, values[i]);
        out[i].report = run_experiment(cfg);
      } catch (const Error& e) {
        out[i].error = e;
      }
    }
  };
  const unsigned n_threads =
      std::max(1u, std::min<unsigned>(jobs == 0 ? 1u : jobs, static_cast<unsigned>(values.size())));
  if (n_threads == 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

std::vector<double> sweep_values(double from, double to, double step) {
  if (!std::isfinite(from) || !std::isfinite(to)) {
    throw Error(ErrorKind::Config, "sweep bounds must be finite");
  }
  if (from == to) return {from};
  if (!(step > 0.0) || to < from) {
    throw Error(ErrorKind::Config, "sweep needs from <= to and a positive step");
  }
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> v(count);
  for (std::size_t k = 0; k < count; ++k) v[k] = from + static_cast<double>(k) * step;
  return v;
}

CostEstimate estimate_costs(const ExperimentConfig& cfg, std::size_t n) {
  const BetaRule& rule = cfg.model.beta_rule;
  // Self-similar spreading rate when beta follows the decay (alpha = beta).
  const double beta = rule.kind() == BetaRule::Kind::Fixed ? rule.parameter()
                                                           : 1.0 / (rule.parameter() + 2.0);
  const double L = cfg.L;
  auto costs = [&](std::size_t k) -> std::pair<double, double> {
    if (k == 0) return {(L - 1.0) / cfg.dt, (L - 1.0) / cfg.dt};
    const double kk = static_cast<double>(k);
    return {std::pow(L, kk) / cfg.dt, kk * (L - 1.0) * std::pow(L, 2.0 * kk * beta) / cfg.dt};
  };
  CostEstimate c;
  c.beta = beta;
  std::tie(c.direct_steps, c.nrg_steps) = costs(n);
  if (2.0 * beta < 1.0) {
    // The ratio nrg/direct peaks once and then decays; report where it stays below one.
    std::size_t last_costlier = 0;
    for (std::size_t k = 1; k <= 100000; ++k) {
      const double kk = static_cast<double>(k);
      if (!(std::log(kk * (L - 1.0)) < kk * (1.0 - 2.0 * beta) * std::log(L))) last_costlier = k;
    }
    c.crossover = last_costlier + 1;
  }
  return c;
}

}  // namespace selfsim
