// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "selfsim/config.hpp"
#include "selfsim/engine.hpp"
#include "selfsim/error.hpp"
#include "selfsim/report.hpp"

namespace fs = std::filesystem;
using namespace selfsim;

namespace {

constexpr int kOk = 0;
constexpr int kConfigExit = 1;
constexpr int kNumericExit = 2;

int exit_code(const Error& e) { return e.is_numeric() ? kNumericExit : kConfigExit; }

std::string output_dir(const std::string& flag, const ExperimentConfig& cfg,
                       const std::string& config_path) {
  if (!flag.empty()) return flag;
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  const std::string stem = fs::path(config_path).stem().string();
  if (const char* root = std::getenv("SELFSIM_OUT"); root && *root) {
    return (fs::path(root) / stem).string();
  }
  return (fs::path("out") / stem).string();
}

void print_summary(const RgReport& report) {
  const ScalingHistory& h = report.history;
  if (h.iterations() == 0) return;
  std::printf("iterations %zu  alpha %s  beta %s  A %s", h.iterations(),
              format_real(h.alpha(0).back()).c_str(), format_real(h.beta().back()).c_str(),
              format_real(h.prefactor(0).back()).c_str());
  if (h.log_decay()) std::printf("  gamma %s", format_real(h.gamma().back()).c_str());
  if (h.components() > 1) {
    std::printf("  alpha_v %s  A_v %s", format_real(h.alpha(1).back()).c_str(),
                format_real(h.prefactor(1).back()).c_str());
  }
  std::printf("\n");
}

int cmd_run(const std::string& config_path, const std::string& out_flag) {
  const ExperimentConfig cfg = load_config(config_path);
  const std::string dir = output_dir(out_flag, cfg, config_path);
  const RgReport report = run_experiment(cfg);
  write_run_outputs(dir, report, cfg);
  print_summary(report);
  std::printf("outputs in %s\n", dir.c_str());
  if (report.failure) {
    std::fprintf(stderr, "error: %s\n", report.failure->what());
    return exit_code(*report.failure);
  }
  return kOk;
}

int cmd_compare(const std::string& run_dir, const std::string& oracle, const std::string& out_flag) {
  const CompareReport r = compare_run(run_dir, oracle);
  const std::string dir = out_flag.empty() ? run_dir : out_flag;
  fs::create_directories(dir);
  write_compare_outputs(dir, r);
  for (const auto& l : r.lines) std::printf("%s\n", l.c_str());
  return kOk;
}

int cmd_sweep(const std::string& config_path, const std::string& param, double from, double to,
              double step, unsigned jobs, const std::string& out_flag) {
  const ExperimentConfig cfg = load_config(config_path);
  if (!(step > 0.0) || to < from) {
    throw Error(ErrorKind::Config, "sweep range needs from <= to and step > 0");
  }
  const std::string dir = output_dir(out_flag, cfg, config_path);
  const auto values = sweep_values(from, to, step);
  const auto points = sweep(cfg, param, values, jobs);
  fs::create_directories(dir);
  int status = kOk;
  for (const auto& p : points) {
    if (p.error) {
      std::fprintf(stderr, "error at %s = %s: %s\n", param.c_str(), format_real(p.value).c_str(),
                   p.error->what());
      status = std::max(status, exit_code(*p.error));
      continue;
    }
    ExperimentConfig point_cfg = cfg;
    set_parameter(point_cfg, param, p.value);
    write_run_outputs((fs::path(dir) / (param + "_" + format_real(p.value))).string(), *p.report,
                      point_cfg);
    if (p.report->failure) {
      std::fprintf(stderr, "error at %s = %s: %s\n", param.c_str(), format_real(p.value).c_str(),
                   p.report->failure->what());
      status = std::max(status, exit_code(*p.report->failure));
    }
  }
  std::ofstream csv(fs::path(dir) / "sweep.csv");
  write_sweep_csv(csv, points);
  write_sweep_csv(std::cout, points);
  return status;
}

int cmd_cost(const std::string& config_path, std::optional<std::size_t> n_flag) {
  const ExperimentConfig cfg = load_config(config_path);
  const std::size_t n = n_flag.value_or(cfg.iterations);
  const CostEstimate c = estimate_costs(cfg, n);
  std::printf("n = %zu\n", n);
  std::printf("beta = %s\n", format_real(c.beta).c_str());
  std::printf("direct_steps = %s\n", format_real(c.direct_steps).c_str());
  std::printf("nrg_steps = %s\n", format_real(c.nrg_steps).c_str());
  std::printf("ratio_direct_over_nrg = %s\n", format_real(c.direct_steps / c.nrg_steps).c_str());
  std::printf("cheaper = %s\n", c.nrg_steps < c.direct_steps ? "nrg" : "direct");
  if (c.crossover) {
    std::printf("crossover = %zu\n", *c.crossover);
  } else {
    std::printf("crossover = none\n");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical renormalization-group driver for self-similar PDE asymptotics"};
  app.require_subcommand(1);

  std::string config_path, out_dir, oracle = "self", run_dir, param;
  double from = 0.0, to = 0.0, step = 0.0;
  unsigned jobs = 1;
  std::optional<std::size_t> cost_n;

  auto* run = app.add_subcommand("run", "Run one experiment and write traces and profiles");
  run->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (default: $SELFSIM_OUT/<config stem>)");

  auto* compare = app.add_subcommand("compare", "Compare a finished run against an oracle");
  compare->add_option("run_dir", run_dir, "Directory written by `run` or `sweep`")->required();
  compare->add_option("--oracle", oracle, "whitham, dipole, gaussian, self or table_a1");
  compare->add_option("--out", out_dir, "Where to write the report (default: run_dir)");

  auto* sw = app.add_subcommand("sweep", "Run a one-parameter sweep");
  sw->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  sw->add_option("--param", param, "Parameter name, e.g. p or model.epsilon")->required();
  sw->add_option("--from", from, "First value")->required();
  sw->add_option("--to", to, "Last value (inclusive)")->required();
  sw->add_option("--step", step, "Increment")->required();
  sw->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  sw->add_option("--out", out_dir, "Output directory");

  auto* cost = app.add_subcommand("cost", "Compare nRG and direct-simulation step counts");
  cost->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  cost->add_option("n", cost_n, "Iteration count (default: rg.iterations)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigExit;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir);
    if (*compare) return cmd_compare(run_dir, oracle, out_dir);
    if (*sw) return cmd_sweep(config_path, param, from, to, step, jobs, out_dir);
    if (*cost) return cmd_cost(config_path, cost_n);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigExit;
  }
  return kOk;
}
