// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "selfsim/error.hpp"
#include "selfsim/grid.hpp"
#include "selfsim/models.hpp"
#include "selfsim/scaling.hpp"

namespace selfsim {

struct InitialCondition {
  enum class Kind { Indicator, OddStep, CosineBump, TanhStep, Gaussian };

  Kind kind = Kind::Indicator;
  double ell = 0.5;    // indicator half-width, odd-step width
  double x0 = 0.0;     // tanh step centre
  double width = 1.0;  // tanh step width, Gaussian variance scale: exp(-x^2 / (4 width))
  double jump = 6.0;   // tanh step: u goes from 0 on the left to -jump on the right

  double operator()(double x) const noexcept;
  Field on(const Grid& grid) const { return Field::sample(grid, *this); }
};

InitialCondition::Kind parse_initial_kind(const std::string& name);
const char* to_string(InitialCondition::Kind kind) noexcept;

enum class RgMode { PowerLaw, LogDecay };

RgMode parse_mode(const std::string& name);
const char* to_string(RgMode mode) noexcept;

struct ExperimentConfig {
  ModelSpec model;
  Grid grid{-8.0, 8.0, 5001};
  double L = 1.2;
  std::size_t iterations = 100;
  double dt = 1e-4;
  Interpolation interpolation = Interpolation::Linear;
  bool normalize = true;
  bool symmetrize = false;
  RgMode mode = RgMode::PowerLaw;
  std::vector<std::size_t> snapshot_at;
  InitialCondition initial;
  double blowup_guard = 1e6;
  bool clip_negative = true;
  double kdv_safety = 0.9;  // fraction of the stability limit used when dt must shrink
  std::string output_dir;

  /// Throws Error(Config) naming the offending field.
  void validate() const;
};

/// Assigns a named numeric parameter ("p", "model.p", "rg.L", ...).
void set_parameter(ExperimentConfig& cfg, const std::string& name, double value);

struct Snapshot {
  std::size_t n = 0;
  Field u;
  std::optional<Field> v;
  double alpha_bar = 0.0;
  double beta_bar = 0.0;
};

struct ConvergenceFlags {
  bool alpha = false;
  bool beta = false;
  bool gamma = false;
  bool alpha_v = false;
};

struct RgReport {
  ScalingHistory history;
  Field final_u;
  std::optional<Field> final_v;
  ConvergenceFlags converged;
  std::vector<Snapshot> snapshots;
  std::vector<std::string> warnings;
  std::size_t warning_count = 0;
  std::optional<Error> failure;
  /// Coefficients used for window k (k = 0 .. iterations-1).
  std::vector<IterationCoefficients> coefficients;
  /// D(u_t) during the last step of the last window (diffusivity models only).
  std::optional<Field> diffusivity;
  /// Sup norm at the end of each window before resampling, per component.
  std::vector<double> end_sup_u;
  std::vector<double> end_sup_v;
};

/// Complete resumable state between iterations.
struct RgState {
  ScalingHistory history;
  Field u;
  std::optional<Field> v;
};

/// Fields at n = 0 (the KdV tanh step uses the downstream level -6 c^2).
RgState initial_state(const ExperimentConfig& cfg);

/// Drives the renormalization loop one iteration at a time.
class RgRunner {
 public:
  explicit RgRunner(ExperimentConfig cfg);
  RgRunner(ExperimentConfig cfg, RgState state);
  RgRunner(const RgRunner&) = delete;
  RgRunner& operator=(const RgRunner&) = delete;

  /// Runs up to k iterations; stops early and records the failure on a numerical error.
  void advance(std::size_t k);
  /// Runs until the configured iteration count is reached.
  void run() { advance(cfg_.iterations > done() ? cfg_.iterations - done() : 0); }

  std::size_t done() const noexcept { return state_.history.iterations(); }
  const RgState& state() const noexcept { return state_; }
  const ExperimentConfig& config() const noexcept { return cfg_; }
  bool failed() const noexcept { return report_.failure.has_value(); }

  /// Snapshot of everything produced so far.
  RgReport report() const;

 private:
  void step();
  void step_kdv(const IterationCoefficients& co);
  void warn(const std::string& msg);
  void take_snapshot();

  ExperimentConfig cfg_;
  RgState state_;
  RgReport report_;
  StepOptions opt_;
  KdvBoundary kdv_bc_;
};

RgReport run_algorithm1(const ExperimentConfig& cfg);
RgReport run_algorithm2(const ExperimentConfig& cfg);
/// Dispatches on cfg.mode.
RgReport run_experiment(const ExperimentConfig& cfg);

/// Unscaled KdV integration of the configured initial data from t = 1 to t_end,
/// the reference against which an n-iteration run is compared at t_end = L^n.
Field kdv_direct_simulation(const ExperimentConfig& cfg, double t_end);

struct SweepPoint {
  double value = 0.0;
  std::optional<RgReport> report;
  std::optional<Error> error;  // config errors; numerical failures live in report->failure
};

/// Independent runs with `parameter` set to each value, on up to `jobs` threads.
std::vector<SweepPoint> sweep(const ExperimentConfig& base, const std::string& parameter,
                              const std::vector<double>& values, unsigned jobs = 1);

/// from, from + step, ... up to `to` inclusive (round-off tolerant).
std::vector<double> sweep_values(double from, double to, double step);

struct CostEstimate {
  double direct_steps = 0.0;
  double nrg_steps = 0.0;
  std::optional<std::size_t> crossover;  // nrg_steps < direct_steps for every n >= crossover
  double beta = 0.0;
};

CostEstimate estimate_costs(const ExperimentConfig& cfg, std::size_t n);

}  // namespace selfsim
