// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "selfsim/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "selfsim/error.hpp"

namespace selfsim {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"model",
       {"kind", "nu", "eps_disp_sq", "m", "p", "q", "lambda", "d", "c_sq", "diffusivity", "epsilon",
        "sigma", "delta", "beta_rule", "beta"}},
      {"grid", {"x_min", "x_max", "n_points", "dx"}},
      {"rg",
       {"L", "iterations", "dt", "interpolation", "normalize", "symmetrize", "mode", "initial",
        "ell", "x0", "width", "jump", "blowup_guard", "clip_negative", "kdv_safety"}},
      {"output", {"dir", "snapshot_at"}},
  };
  return keys;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> text(const std::string& section, const std::string& key) const {
    const auto sec = tree_.get_child_optional(section);
    if (!sec) return std::nullopt;
    const auto v = sec->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return trim(*v);
  }

  void real(const std::string& section, const std::string& key, double& out) const {
    const auto s = text(section, key);
    if (!s) return;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(*s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s->size() || !std::isfinite(v)) {
      throw Error(ErrorKind::Config, section + "." + key + ": expected a real number, got '" + *s + "'");
    }
    out = v;
  }

  void count(const std::string& section, const std::string& key, std::size_t& out) const {
    const auto s = text(section, key);
    if (!s) return;
    if (s->empty() || s->find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorKind::Config,
                  section + "." + key + ": expected a non-negative integer, got '" + *s + "'");
    }
    out = static_cast<std::size_t>(std::stoull(*s));
  }

  void flag(const std::string& section, const std::string& key, bool& out) const {
    const auto s = text(section, key);
    if (!s) return;
    if (*s == "true" || *s == "yes" || *s == "on" || *s == "1") {
      out = true;
    } else if (*s == "false" || *s == "no" || *s == "off" || *s == "0") {
      out = false;
    } else {
      throw Error(ErrorKind::Config, section + "." + key + ": expected true/false, got '" + *s + "'");
    }
  }

  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  }

 private:
  const pt::ptree& tree_;
};

void check_keys(const pt::ptree& tree) {
  const auto& known = known_keys();
  for (const auto& [section, body] : tree) {
    const auto it = known.find(section);
    if (it == known.end()) throw Error(ErrorKind::Config, "unknown section [" + section + "]");
    if (body.empty() && !body.data().empty()) {
      throw Error(ErrorKind::Config, "key '" + section + "' outside any section");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) {
        throw Error(ErrorKind::Config, "unknown key '" + key + "' in [" + section + "]");
      }
    }
  }
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = Reader::trim(item);
    if (item.empty()) continue;
    if (item.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorKind::Config, "output.snapshot_at: '" + item + "' is not an iteration index");
    }
    out.push_back(static_cast<std::size_t>(std::stoull(item)));
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::Config, std::string("malformed config: ") + e.what());
  }
  check_keys(tree);
  const Reader r(tree);
  ExperimentConfig cfg;

  ModelSpec& m = cfg.model;
  if (auto s = r.text("model", "kind")) m.kind = parse_model_kind(*s);
  r.real("model", "nu", m.nu);
  r.real("model", "eps_disp_sq", m.eps_disp_sq);
  r.real("model", "m", m.m);
  r.real("model", "p", m.p);
  r.real("model", "q", m.q);
  r.real("model", "lambda", m.lambda);
  r.real("model", "d", m.d);
  r.real("model", "c_sq", m.c_sq);
  if (auto s = r.text("model", "diffusivity")) m.diffusivity.kind = parse_diffusivity_kind(*s);
  r.real("model", "epsilon", m.diffusivity.epsilon);
  r.real("model", "sigma", m.diffusivity.sigma);
  r.real("model", "delta", m.diffusivity.delta);
  {
    const std::string rule = r.text("model", "beta_rule").value_or("fixed");
    if (rule == "fixed") {
      double beta = m.kind == ModelKind::Kdv ? 1.0 / 3.0 : 0.5;
      r.real("model", "beta", beta);
      m.beta_rule = BetaRule::fixed(beta);
    } else if (rule == "unscaled_diffusivity") {
      if (r.text("model", "beta")) {
        throw Error(ErrorKind::Config, "model.beta only applies to model.beta_rule = fixed");
      }
      m.beta_rule = BetaRule::unscaled_diffusivity(m.m);
    } else {
      throw Error(ErrorKind::Config, "model.beta_rule: unknown rule '" + rule + "'");
    }
  }

  double x_min = cfg.grid.x_min();
  double x_max = cfg.grid.x_max();
  r.real("grid", "x_min", x_min);
  r.real("grid", "x_max", x_max);
  const bool has_n = r.text("grid", "n_points").has_value();
  const bool has_dx = r.text("grid", "dx").has_value();
  if (has_n && has_dx) throw Error(ErrorKind::Config, "grid: give either n_points or dx, not both");
  try {
    if (has_dx) {
      double dx = 0.0;
      r.real("grid", "dx", dx);
      cfg.grid = Grid::with_spacing(x_min, x_max, dx);
    } else {
      std::size_t n = cfg.grid.size();
      r.count("grid", "n_points", n);
      cfg.grid = Grid(x_min, x_max, n);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    throw Error(ErrorKind::Config, std::string("grid: ") + e.what());
  }

  r.real("rg", "L", cfg.L);
  r.count("rg", "iterations", cfg.iterations);
  r.real("rg", "dt", cfg.dt);
  if (auto s = r.text("rg", "interpolation")) cfg.interpolation = parse_interpolation(*s);
  r.flag("rg", "normalize", cfg.normalize);
  r.flag("rg", "symmetrize", cfg.symmetrize);
  if (auto s = r.text("rg", "mode")) cfg.mode = parse_mode(*s);
  if (auto s = r.text("rg", "initial")) cfg.initial.kind = parse_initial_kind(*s);
  r.real("rg", "ell", cfg.initial.ell);
  r.real("rg", "x0", cfg.initial.x0);
  r.real("rg", "width", cfg.initial.width);
  r.real("rg", "jump", cfg.initial.jump);
  r.real("rg", "blowup_guard", cfg.blowup_guard);
  r.flag("rg", "clip_negative", cfg.clip_negative);
  r.real("rg", "kdv_safety", cfg.kdv_safety);

  if (auto s = r.text("output", "dir")) cfg.output_dir = *s;
  if (auto s = r.text("output", "snapshot_at")) cfg.snapshot_at = parse_list(*s);

  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot read config '" + path + "'");
  return parse_config(in);
}

std::string format_config(const ExperimentConfig& cfg) {
  const ModelSpec& m = cfg.model;
  std::ostringstream o;
  auto kv = [&](const char* key, const std::string& value) { o << key << " = " << value << '\n'; };
  auto num = [&](const char* key, double value) { kv(key, format_real(value)); };
  o << "[model]\n";
  kv("kind", to_string(m.kind));
  num("nu", m.nu);
  num("eps_disp_sq", m.eps_disp_sq);
  num("m", m.m);
  num("p", m.p);
  num("q", m.q);
  num("lambda", m.lambda);
  num("d", m.d);
  num("c_sq", m.c_sq);
  kv("diffusivity", to_string(m.diffusivity.kind));
  num("epsilon", m.diffusivity.epsilon);
  num("sigma", m.diffusivity.sigma);
  num("delta", m.diffusivity.delta);
  if (m.beta_rule.kind() == BetaRule::Kind::Fixed) {
    kv("beta_rule", "fixed");
    num("beta", m.beta_rule.parameter());
  } else {
    kv("beta_rule", "unscaled_diffusivity");
  }
  o << "\n[grid]\n";
  num("x_min", cfg.grid.x_min());
  num("x_max", cfg.grid.x_max());
  kv("n_points", std::to_string(cfg.grid.size()));
  o << "\n[rg]\n";
  num("L", cfg.L);
  kv("iterations", std::to_string(cfg.iterations));
  num("dt", cfg.dt);
  kv("interpolation", to_string(cfg.interpolation));
  kv("normalize", cfg.normalize ? "true" : "false");
  kv("symmetrize", cfg.symmetrize ? "true" : "false");
  kv("mode", to_string(cfg.mode));
  kv("initial", to_string(cfg.initial.kind));
  num("ell", cfg.initial.ell);
  num("x0", cfg.initial.x0);
  num("width", cfg.initial.width);
  num("jump", cfg.initial.jump);
  num("blowup_guard", cfg.blowup_guard);
  kv("clip_negative", cfg.clip_negative ? "true" : "false");
  num("kdv_safety", cfg.kdv_safety);
  o << "\n[output]\n";
  if (!cfg.output_dir.empty()) kv("dir", cfg.output_dir);
  std::string snaps;
  for (std::size_t i = 0; i < cfg.snapshot_at.size(); ++i) {
    if (i) snaps += ", ";
    snaps += std::to_string(cfg.snapshot_at[i]);
  }
  kv("snapshot_at", snaps);
  return o.str();
}

}  // namespace selfsim
