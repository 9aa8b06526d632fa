// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "selfsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "selfsim/config.hpp"
#include "selfsim/error.hpp"
#include "selfsim/oracles.hpp"

namespace selfsim {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  return out;
}

bool has_advection(ModelKind k) { return k == ModelKind::Burgers || k == ModelKind::Kdv; }

std::string cell(double v) { return format_real(v); }

}  // namespace

void write_trace(std::ostream& out, const RgReport& report, const ModelSpec& spec,
                 std::size_t component) {
  const ScalingHistory& h = report.history;
  out << kTraceHeader << '\n';
  const bool gamma_col = h.log_decay() && component == 0;
  for (std::size_t n = 1; n <= h.iterations(); ++n) {
    const std::size_t i = n - 1;
    const IterationCoefficients co = coefficients_for_iteration(spec, h, n);
    out << n << ',' << cell(h.alpha(component)[i]) << ',' << cell(h.beta()[i]) << ',';
    if (gamma_col) out << cell(h.gamma()[i]);
    out << ',' << cell(h.alpha_bar(component)[i]) << ',' << cell(h.beta_bar()[i]) << ','
        << cell(h.prefactor(component)[i]) << ',' << cell(h.B()[i]) << ',';
    if (has_advection(spec.kind)) out << cell(co.advection);
    out << ',';
    if (spec.kind != ModelKind::Kdv) out << cell(component == 0 ? co.diffusion : co.diffusion_v);
    out << '\n';
  }
}

void write_summary(std::ostream& out, const RgReport& report, const ExperimentConfig& cfg) {
  const ScalingHistory& h = report.history;
  const std::size_t n = h.iterations();
  auto kv = [&](const std::string& k, const std::string& v) { out << k << " = " << v << '\n'; };
  kv("model", to_string(cfg.model.kind));
  kv("mode", to_string(cfg.mode));
  kv("iterations_requested", std::to_string(cfg.iterations));
  kv("iterations_run", std::to_string(n));
  kv("status", report.failure ? std::string("failed") : std::string("ok"));
  if (report.failure) {
    kv("failure_kind", to_string(report.failure->kind()));
    kv("failure", report.failure->what());
  }
  kv("alpha_bookkeeping", cfg.normalize && cfg.model.kind != ModelKind::Kdv
                              ? "applied factor after resampling and normalization"
                              : "measured sup-norm ratio");
  if (n > 0) {
    kv("alpha", cell(h.alpha(0).back()));
    kv("alpha_bar", cell(h.alpha_bar(0).back()));
    kv("beta", cell(h.beta().back()));
    kv("beta_bar", cell(h.beta_bar().back()));
    kv("A_n", cell(h.prefactor(0).back()));
    kv("B_n", cell(h.B().back()));
    if (h.log_decay()) {
      kv("gamma", cell(h.gamma().back()));
      kv("S_log", cell(h.S_log()));
    }
    if (h.components() > 1) {
      kv("alpha_v", cell(h.alpha(1).back()));
      kv("alpha_bar_v", cell(h.alpha_bar(1).back()));
      kv("A_v", cell(h.prefactor(1).back()));
    }
    const IterationCoefficients co = coefficients_for_iteration(cfg.model, h, n);
    if (has_advection(cfg.model.kind)) kv("kappa_n", cell(co.advection));
    if (cfg.model.kind != ModelKind::Kdv) kv("nu_n", cell(co.diffusion));
  }
  kv("converged_alpha", report.converged.alpha ? "true" : "false");
  kv("converged_beta", report.converged.beta ? "true" : "false");
  if (h.log_decay()) kv("converged_gamma", report.converged.gamma ? "true" : "false");
  if (h.components() > 1) kv("converged_alpha_v", report.converged.alpha_v ? "true" : "false");
  kv("warnings", std::to_string(report.warning_count));
  for (const auto& w : report.warnings) kv("warning", w);
}

void write_run_outputs(const std::string& dir, const RgReport& report, const ExperimentConfig& cfg) {
  const fs::path root(dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create '" + dir + "': " + ec.message());

  {
    auto out = open_out(root / "config.ini");
    out << format_config(cfg);
  }
  {
    auto out = open_out(root / "trace.csv");
    write_trace(out, report, cfg.model, 0);
  }
  if (report.history.components() > 1) {
    auto out = open_out(root / "trace_v.csv");
    write_trace(out, report, cfg.model, 1);
  }
  const auto meta = [&](std::size_t n, double abar, double bbar) {
    return std::vector<std::pair<std::string, std::string>>{
        {"n", std::to_string(n)},
        {"alpha_bar", cell(abar)},
        {"beta_bar", cell(bbar)},
        {"L", cell(cfg.L)},
        {"x_scale", "physical x = L^(n beta_bar) * column 1"},
        {"u_scale", "physical u = L^(-n alpha_bar) * column 2"}};
  };
  for (const auto& s : report.snapshots) {
    write_profile((root / ("snapshot_" + std::to_string(s.n) + ".dat")).string(), s.u,
                  meta(s.n, s.alpha_bar, s.beta_bar));
    if (s.v) {
      write_profile((root / ("snapshot_v_" + std::to_string(s.n) + ".dat")).string(), *s.v,
                    meta(s.n, s.alpha_bar, s.beta_bar));
    }
  }
  const ScalingHistory& h = report.history;
  const std::size_t n = h.iterations();
  const double abar = n ? h.alpha_bar(0).back() : 0.0;
  const double bbar = n ? h.beta_bar().back() : 0.0;
  write_profile((root / "final.dat").string(), report.final_u, meta(n, abar, bbar));
  if (report.final_v) {
    const double abar_v = n ? h.alpha_bar(1).back() : 0.0;
    write_profile((root / "final_v.dat").string(), *report.final_v, meta(n, abar_v, bbar));
  }
  if (report.diffusivity) {
    write_profile((root / "diffusivity.dat").string(), *report.diffusivity,
                  {{"n", std::to_string(n)}, {"quantity", "D(u_t) during the last step"}});
  }
  {
    auto out = open_out(root / "summary.txt");
    write_summary(out, report, cfg);
  }
}

std::map<std::string, std::string> read_summary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    out[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return out;
}

ProfileDiscrepancy profile_discrepancy(const Field& computed, const Field& reference) {
  if (!(computed.grid() == reference.grid())) {
    throw Error(ErrorKind::InvalidArgument, "profiles live on different grids");
  }
  const double sc = sup_norm(computed);
  const double sr = sup_norm(reference);
  if (sc == 0.0 || sr == 0.0) throw Error(ErrorKind::ZeroField, "cannot compare a zero profile");
  ProfileDiscrepancy d;
  double sum = 0.0;
  for (std::size_t i = 0; i < computed.size(); ++i) {
    const double e = computed[i] / sc - reference[i] / sr;
    d.sup = std::max(d.sup, std::abs(e));
    sum += e * e;
  }
  d.l2 = std::sqrt(sum * computed.grid().dx());
  return d;
}

namespace {

Field load_field(const fs::path& path) {
  const Profile p = read_profile(path.string());
  if (p.x.size() < 4) throw Error(ErrorKind::Io, "profile '" + path.string() + "' is too short");
  return Field(Grid(p.x.front(), p.x.back(), p.x.size()), p.values);
}

double summary_real(const std::map<std::string, std::string>& s, const std::string& key) {
  const auto it = s.find(key);
  if (it == s.end()) return std::nan("");
  return std::stod(it->second);
}

void fill_curves(CompareReport& r, const Field& computed, const Field& reference) {
  const double sc = sup_norm(computed);
  const double sr = sup_norm(reference);
  r.x.resize(computed.size());
  r.computed.resize(computed.size());
  r.reference.resize(computed.size());
  for (std::size_t i = 0; i < computed.size(); ++i) {
    r.x[i] = computed.grid().x(i);
    r.computed[i] = sc > 0.0 ? computed[i] / sc : 0.0;
    r.reference[i] = sr > 0.0 ? reference[i] / sr : 0.0;
  }
}

}  // namespace

CompareReport compare_run(const std::string& run_dir, const std::string& oracle) {
  const fs::path root(run_dir);
  CompareReport r;
  r.oracle = oracle;
  auto line = [&](const std::string& k, const std::string& v) { r.lines.push_back(k + " = " + v); };

  const bool is_sweep = fs::exists(root / "sweep.csv") && !fs::exists(root / "final.dat");
  if (oracle == "table_a1" && is_sweep) {
    std::ifstream in(root / "sweep.csv");
    std::string row;
    std::getline(in, row);
    double worst = 0.0;
    while (std::getline(in, row)) {
      std::istringstream cols(row);
      std::string eps_s, alpha_s;
      std::getline(cols, eps_s, ',');
      std::getline(cols, alpha_s, ',');
      if (alpha_s.empty()) continue;
      const double eps = std::stod(eps_s);
      const double alpha = std::stod(alpha_s);
      const TableRow& t = table_a1_row(eps);
      worst = std::max(worst, std::abs(alpha - t.alpha_computed));
      line("epsilon " + format_real(eps),
           "alpha " + format_real(alpha) + " reference " + format_real(t.alpha_computed) +
               " delta " + format_real(alpha - t.alpha_computed));
    }
    line("max_abs_delta", format_real(worst));
    return r;
  }

  const ExperimentConfig cfg = load_config((root / "config.ini").string());
  const auto summary = read_summary((root / "summary.txt").string());
  const Field u = load_field(root / "final.dat");
  const Grid& g = u.grid();
  line("run", run_dir);
  line("oracle", oracle);

  if (oracle == "self") {
    r.discrepancy = profile_discrepancy(u, u);
    fill_curves(r, u, u);
  } else if (oracle == "whitham") {
    const double M = cfg.initial.kind == InitialCondition::Kind::Indicator
                         ? 2.0 * cfg.initial.ell
                         : total_mass(cfg.initial.on(cfg.grid));
    const Field ref = whitham_profile_on_grid(g, M, cfg.model.nu);
    r.discrepancy = profile_discrepancy(u, ref);
    fill_curves(r, u, ref);
    const double alpha = summary_real(summary, "alpha");
    line("mass", format_real(M));
    line("reynolds", format_real(M / (2.0 * cfg.model.nu)));
    line("alpha_delta", format_real(alpha - 0.5));
    const double A_theory = M / total_mass((1.0 / sup_norm(u)) * u);
    line("A_from_profile", format_real(A_theory));
    line("A_n", format_real(summary_real(summary, "A_n")));
  } else if (oracle == "dipole") {
    const Field ref = dipole_profile_on_grid(g, cfg.model.nu);
    r.discrepancy = profile_discrepancy(u, ref);
    fill_curves(r, u, ref);
    line("alpha_delta", format_real(summary_real(summary, "alpha") - 1.0));
    line("kappa_n", format_real(summary_real(summary, "kappa_n")));
  } else if (oracle == "gaussian") {
    const Field ref_u = Field::sample(g, [](double x) { return std::exp(-x * x / 4.0); });
    r.discrepancy = profile_discrepancy(u, ref_u);
    fill_curves(r, u, ref_u);
    line("u_sup_discrepancy", format_real(r.discrepancy.sup));
    if (fs::exists(root / "final_v.dat")) {
      const Field v = load_field(root / "final_v.dat");
      const double d = cfg.model.d;
      const Field ref_v = Field::sample(g, [d](double x) { return std::exp(-x * x / (4.0 * d)); });
      const ProfileDiscrepancy dv = profile_discrepancy(v, ref_v);
      line("v_sup_discrepancy", format_real(dv.sup));
      line("v_l2_discrepancy", format_real(dv.l2));
      r.discrepancy.sup = std::max(r.discrepancy.sup, dv.sup);
      r.discrepancy.l2 = std::max(r.discrepancy.l2, dv.l2);
      const Field ic = cfg.initial.on(cfg.grid);
      const double A = 2.0 * total_mass(ic);
      const double A_v = A / std::sqrt(4.0 * std::numbers::pi * d);
      line("A_v_theory", format_real(A_v));
      line("A_v", format_real(summary_real(summary, "A_v")));
      if (cfg.mode == RgMode::LogDecay) {
        const LiQiConstants lq = li_qi_constants(cfg.model.p, cfg.model.q, d, A, cfg.L);
        line("gamma_theory", format_real(lq.gamma));
        line("gamma", format_real(summary_real(summary, "gamma")));
        line("A_star_theory", format_real(lq.A_star));
        line("A_u", format_real(summary_real(summary, "A_n")));
      }
    }
  } else if (oracle == "table_a1") {
    const TableRow& t = table_a1_row(cfg.model.diffusivity.epsilon);
    const double alpha = summary_real(summary, "alpha");
    line("epsilon", format_real(t.epsilon));
    line("alpha", format_real(alpha));
    line("reference_computed", format_real(t.alpha_computed));
    line("reference_linear", format_real(t.alpha_linear));
    line("reference_quadratic", format_real(t.alpha_quadratic));
    line("alpha_delta", format_real(alpha - t.alpha_computed));
    r.discrepancy = profile_discrepancy(u, u);
    fill_curves(r, u, u);
  } else {
    throw Error(ErrorKind::UnknownOracle, "unknown oracle '" + oracle +
                                              "' (expected whitham, dipole, gaussian, self, table_a1)");
  }
  line("sup_discrepancy", format_real(r.discrepancy.sup));
  line("l2_discrepancy", format_real(r.discrepancy.l2));
  return r;
}

void write_compare_outputs(const std::string& dir, const CompareReport& report) {
  const fs::path root(dir);
  {
    auto out = open_out(root / "compare_report.txt");
    for (const auto& l : report.lines) out << l << '\n';
  }
  if (!report.x.empty()) {
    auto out = open_out(root / "compare_plot.dat");
    out << "# x computed " << report.oracle << '\n';
    for (std::size_t i = 0; i < report.x.size(); ++i) {
      out << format_real(report.x[i]) << ' ' << format_real(report.computed[i]) << ' '
          << format_real(report.reference[i]) << '\n';
    }
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points) {
  out << "param_value,final_alpha,final_A,converged\n";
  for (const auto& p : points) {
    out << format_real(p.value) << ',';
    const bool usable = p.report && !p.report->failure && p.report->history.iterations() > 0;
    if (usable) {
      const ScalingHistory& h = p.report->history;
      out << format_real(h.alpha(0).back()) << ',' << format_real(h.prefactor(0).back()) << ','
          << (p.report->converged.alpha ? "true" : "false");
    } else {
      out << ",,false";
    }
    out << '\n';
  }
}

}  // namespace selfsim
