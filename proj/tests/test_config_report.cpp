// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "selfsim/config.hpp"
#include "selfsim/error.hpp"
#include "selfsim/report.hpp"

namespace fs = std::filesystem;
using namespace selfsim;

namespace {

const char* kBurgers = R"(
[model]
kind = burgers
nu = 0.05

[grid]
x_min = -8
x_max = 8
n_points = 401

[rg]
L = 1.2
iterations = 6
dt = 1e-3
initial = indicator
ell = 0.5

[output]
snapshot_at = 2, 4
)";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("selfsim_test_" + name);
  fs::remove_all(p);
  return p;
}

ErrorKind config_error_kind(const std::string& text, std::string* message = nullptr) {
  try {
    parse_config_string(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.kind();
  }
  FAIL("config was accepted");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("config parses every section") {
  const ExperimentConfig cfg = parse_config_string(kBurgers);
  CHECK(cfg.model.kind == ModelKind::Burgers);
  CHECK(cfg.model.nu == 0.05);
  CHECK(cfg.grid.size() == 401);
  CHECK(cfg.grid.dx() == doctest::Approx(0.04));
  CHECK(cfg.iterations == 6);
  CHECK(cfg.snapshot_at == std::vector<std::size_t>{2, 4});
  CHECK(cfg.initial.kind == InitialCondition::Kind::Indicator);
}

TEST_CASE("config errors name the field") {
  std::string msg;
  CHECK(config_error_kind("[rg]\nL = 1.0\n", &msg) == ErrorKind::Config);
  CHECK(msg.find("rg.L") != std::string::npos);
  CHECK(config_error_kind("[rg]\nbogus = 3\n", &msg) == ErrorKind::Config);
  CHECK(msg.find("bogus") != std::string::npos);
  CHECK(config_error_kind("[nowhere]\nx = 1\n") == ErrorKind::Config);
  CHECK(config_error_kind("[model]\nkind = navier_stokes\n") == ErrorKind::Config);
  CHECK(config_error_kind("[rg]\ndt = abc\n") == ErrorKind::Config);
  CHECK(config_error_kind("[rg]\nmode = log_decay\n") == ErrorKind::Config);
  CHECK(config_error_kind("[model]\nkind = autocatalytic\np = 1.5\nq = 1.2\n") == ErrorKind::Config);
  CHECK_THROWS_AS(load_config("/nonexistent/selfsim.ini"), Error);
}

TEST_CASE("config grid by spacing") {
  const ExperimentConfig cfg = parse_config_string("[grid]\nx_min = -10\nx_max = 10\ndx = 0.04\n");
  CHECK(cfg.grid.size() == 501);
  CHECK(cfg.grid.dx() == doctest::Approx(0.04));
}

TEST_CASE("format and parse round trip") {
  ExperimentConfig cfg = parse_config_string(kBurgers);
  cfg.model.diffusivity = {DiffusivityProfile::Kind::Tanh, 0.3, 0.2, 0.1};
  cfg.interpolation = Interpolation::Cubic;
  const std::string text = format_config(cfg);
  const ExperimentConfig back = parse_config_string(text);
  CHECK(format_config(back) == text);
  CHECK(back.grid == cfg.grid);
  CHECK(back.model.diffusivity.epsilon == 0.3);
  CHECK(back.interpolation == Interpolation::Cubic);

  cfg.model.kind = ModelKind::DiffusionAbsorption;
  cfg.model.beta_rule = BetaRule::unscaled_diffusivity(1.0);
  cfg.model.m = 1.0;
  cfg.model.p = 4.0;
  const ExperimentConfig back2 = parse_config_string(format_config(cfg));
  CHECK(back2.model.beta_rule.kind() == BetaRule::Kind::UnscaledDiffusivity);
  CHECK(back2.model.beta_rule.parameter() == 1.0);
}

TEST_CASE("trace and summary") {
  const ExperimentConfig cfg = parse_config_string(kBurgers);
  const RgReport rep = run_experiment(cfg);
  std::ostringstream trace;
  write_trace(trace, rep, cfg.model);
  std::istringstream lines(trace.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == kTraceHeader);
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 9);
  }
  CHECK(rows == cfg.iterations);

  std::ostringstream summary;
  write_summary(summary, rep, cfg);
  CHECK(summary.str().find("status = ok") != std::string::npos);
  CHECK(summary.str().find("iterations_run = 6") != std::string::npos);
}

TEST_CASE("run outputs are deterministic and compare cleanly with themselves") {
  const ExperimentConfig cfg = parse_config_string(kBurgers);
  const fs::path a = scratch("a");
  const fs::path b = scratch("b");
  write_run_outputs(a.string(), run_experiment(cfg), cfg);
  write_run_outputs(b.string(), run_experiment(cfg), cfg);
  for (const char* f : {"trace.csv", "final.dat", "summary.txt", "config.ini", "snapshot_2.dat", "snapshot_4.dat"}) {
    CAPTURE(f);
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  CHECK(parse_config_string(slurp(a / "config.ini")).iterations == 6);

  const auto summary = read_summary((a / "summary.txt").string());
  CHECK(summary.at("model") == "burgers");

  const CompareReport self = compare_run(a.string(), "self");
  CHECK(self.discrepancy.sup == 0.0);
  CHECK(self.discrepancy.l2 == 0.0);
  write_compare_outputs(a.string(), self);
  CHECK(fs::exists(a / "compare_report.txt"));
  CHECK(fs::exists(a / "compare_plot.dat"));

  const CompareReport w = compare_run(a.string(), "whitham");
  CHECK(w.discrepancy.sup > 0.0);
  CHECK(w.x.size() == cfg.grid.size());

  try {
    compare_run(a.string(), "nonsense");
    FAIL("expected UnknownOracle");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownOracle);
  }
  CHECK_THROWS_AS(compare_run(scratch("missing").string(), "self"), Error);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("profile discrepancy is scale free") {
  const Grid g(-1.0, 1.0, 201);
  const Field f = Field::sample(g, [](double x) { return std::exp(-x * x); });
  const ProfileDiscrepancy d = profile_discrepancy(f, 3.0 * f);
  CHECK(d.sup == doctest::Approx(0.0).epsilon(1e-15));
  const Field h = Field::sample(g, [](double x) { return x > 0.5 ? 0.5 : 1.0; });
  const ProfileDiscrepancy e = profile_discrepancy(h, Field::sample(g, [](double) { return 1.0; }));
  CHECK(e.sup == doctest::Approx(0.5));
}

TEST_CASE("sweep csv") {
  SweepPoint ok;
  ok.value = 2.0;
  ExperimentConfig cfg = parse_config_string(kBurgers);
  cfg.iterations = 2;
  ok.report = run_experiment(cfg);
  SweepPoint bad;
  bad.value = 0.5;
  bad.error = Error(ErrorKind::Config, "bad");
  std::ostringstream out;
  write_sweep_csv(out, {ok, bad});
  const std::string s = out.str();
  CHECK(s.rfind("param_value,final_alpha,final_A,converged\n", 0) == 0);
  CHECK(s.find("0.5,,,false") != std::string::npos);
}
