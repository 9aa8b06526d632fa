// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "selfsim/engine.hpp"

namespace selfsim {

inline constexpr const char* kTraceHeader = "n,alpha,beta,gamma,alpha_bar,beta_bar,A_n,B_n,kappa_n,nu_n";

/// One row per completed iteration for component c (0 = u, 1 = v).
void write_trace(std::ostream& out, const RgReport& report, const ModelSpec& spec,
                 std::size_t component = 0);

/// `key = value` lines: final exponents, prefactors, convergence flags, status.
void write_summary(std::ostream& out, const RgReport& report, const ExperimentConfig& cfg);

/// trace.csv (+ trace_v.csv), snapshots, final.dat (+ final_v.dat), diffusivity.dat,
/// summary.txt and config.ini under `dir`, which is created if needed.
void write_run_outputs(const std::string& dir, const RgReport& report, const ExperimentConfig& cfg);

std::map<std::string, std::string> read_summary(const std::string& path);

struct ProfileDiscrepancy {
  double sup = 0.0;
  double l2 = 0.0;  // sqrt(dx * sum of squared differences)
};

/// Both profiles scaled to unit sup norm before differencing.
ProfileDiscrepancy profile_discrepancy(const Field& computed, const Field& reference);

struct CompareReport {
  std::string oracle;
  std::vector<std::string> lines;  // human-readable report body
  std::vector<double> x;
  std::vector<double> computed;
  std::vector<double> reference;
  ProfileDiscrepancy discrepancy;
};

/// Compares the final profile of a run directory (written by write_run_outputs)
/// against a named oracle: whitham, dipole, gaussian, self, table_a1.
CompareReport compare_run(const std::string& run_dir, const std::string& oracle);

void write_compare_outputs(const std::string& dir, const CompareReport& report);

/// sweep.csv: param_value, final_alpha, final_A, converged.
void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points);

}  // namespace selfsim
