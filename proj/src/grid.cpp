// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "selfsim/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "selfsim/error.hpp"

namespace selfsim {

Grid::Grid(double x_min, double x_max, std::size_t n_points)
    : x_min_(x_min), x_max_(x_max), n_(n_points), dx_(0.0) {
  if (!(std::isfinite(x_min) && std::isfinite(x_max)) || !(x_min < x_max)) {
    throw Error(ErrorKind::InvalidArgument, "grid requires finite x_min < x_max");
  }
  if (n_points < 4) {
    throw Error(ErrorKind::InvalidArgument, "grid requires at least 4 points");
  }
  dx_ = (x_max - x_min) / static_cast<double>(n_points - 1);
}

Grid Grid::with_spacing(double x_min, double x_max, double dx) {
  if (!(dx > 0.0)) throw Error(ErrorKind::InvalidArgument, "grid spacing must be positive");
  const double intervals = std::round((x_max - x_min) / dx);
  if (intervals < 3.0) throw Error(ErrorKind::InvalidArgument, "grid requires at least 4 points");
  return Grid(x_min, x_max, static_cast<std::size_t>(intervals) + 1);
}

bool Grid::symmetric() const noexcept {
  const double scale = std::max(std::abs(x_min_), std::abs(x_max_));
  return std::abs(x_min_ + x_max_) <= 1e-12 * scale && (n_ % 2 == 1);
}

Interpolation parse_interpolation(const std::string& name) {
  if (name == "linear") return Interpolation::Linear;
  if (name == "cubic") return Interpolation::Cubic;
  throw Error(ErrorKind::Config, "unknown interpolation order '" + name + "'");
}

const char* to_string(Interpolation order) noexcept {
  return order == Interpolation::Linear ? "linear" : "cubic";
}

Field::Field(Grid grid) : grid_(grid), values_(grid.size(), 0.0) {}

Field::Field(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error(ErrorKind::InvalidArgument, "field length does not match grid");
  }
}

void Field::check_finite() const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorKind::NonFinite,
                  "value at node " + std::to_string(i) + " (x = " + format_real(grid_.x(i)) + ")");
    }
  }
}

Field& Field::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

Field& Field::operator+=(const Field& other) {
  if (!(other.grid_ == grid_)) throw Error(ErrorKind::InvalidArgument, "grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  if (!(other.grid_ == grid_)) throw Error(ErrorKind::InvalidArgument, "grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field operator*(double s, Field f) { return f *= s; }
Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }

double sup_norm(const Field& f) {
  f.check_finite();
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double total_mass(const Field& f) {
  f.check_finite();
  const auto v = f.values();
  double s = 0.5 * (v.front() + v.back());
  for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
  return s * f.grid().dx();
}

namespace {

// Position of x in node units, with a tolerance for round-off at the ends.
double node_coordinate(const Grid& g, double x) {
  const double s = (x - g.x_min()) / g.dx();
  const double last = static_cast<double>(g.size() - 1);
  constexpr double tol = 1e-9;
  if (!(s >= -tol && s <= last + tol)) {
    throw Error(ErrorKind::OutOfDomain, "query x = " + format_real(x) + " outside [" +
                                            format_real(g.x_min()) + ", " +
                                            format_real(g.x_max()) + "]");
  }
  return std::clamp(s, 0.0, last);
}

double interpolate_at(std::span<const double> v, double s, Interpolation order) {
  const std::size_t n = v.size();
  if (order == Interpolation::Linear) {
    const std::size_t k = std::min(static_cast<std::size_t>(s), n - 2);
    const double t = s - static_cast<double>(k);
    return (1.0 - t) * v[k] + t * v[k + 1];
  }
  const std::size_t k = static_cast<std::size_t>(s);
  const std::size_t j0 = std::min(k == 0 ? 0 : k - 1, n - 4);
  const double r = s - static_cast<double>(j0);
  const double r1 = r - 1.0;
  const double r2 = r - 2.0;
  const double r3 = r - 3.0;
  const double w0 = -r1 * r2 * r3 / 6.0;
  const double w1 = r * r2 * r3 / 2.0;
  const double w2 = -r * r1 * r3 / 2.0;
  const double w3 = r * r1 * r2 / 6.0;
  return w0 * v[j0] + w1 * v[j0 + 1] + w2 * v[j0 + 2] + w3 * v[j0 + 3];
}

}  // namespace

double interpolate(const Field& f, double x, Interpolation order) {
  return interpolate_at(f.values(), node_coordinate(f.grid(), x), order);
}

Field rescale_resample(const Field& f, double space_factor, Interpolation order,
                       double outside_left, double outside_right) {
  if (!(space_factor > 0.0) || !std::isfinite(space_factor)) {
    throw Error(ErrorKind::InvalidArgument, "space factor must be positive");
  }
  const Grid& g = f.grid();
  const double last = static_cast<double>(g.size() - 1);
  constexpr double tol = 1e-9;
  Field out(g);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double q = space_factor * g.x(j);
    const double s = (q - g.x_min()) / g.dx();
    if (s < -tol) {
      out[j] = outside_left;
    } else if (s > last + tol) {
      out[j] = outside_right;
    } else {
      const double node = std::round(s);
      out[j] = interpolate_at(f.values(), std::abs(s - node) < tol ? node : std::clamp(s, 0.0, last), order);
    }
  }
  return out;
}

std::pair<Field, double> normalize_amplitude(const Field& f) {
  const double s = sup_norm(f);
  if (s == 0.0) throw Error(ErrorKind::ZeroField, "cannot normalize a zero field");
  Field out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] / s;
  return {std::move(out), s};
}

Field symmetrize_odd(const Field& f) {
  const Grid& g = f.grid();
  if (!g.symmetric()) {
    throw Error(ErrorKind::AsymmetricGrid, "odd symmetrization needs x_min = -x_max and odd node count");
  }
  Field out = f;
  const std::size_t c = g.center_index();
  out[c] = 0.0;
  for (std::size_t k = 1; k <= c; ++k) out[c - k] = -out[c + k];
  return out;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void write_profile(std::ostream& out, const Field& f,
                   const std::vector<std::pair<std::string, std::string>>& metadata) {
  for (const auto& [key, value] : metadata) out << "# " << key << " = " << value << '\n';
  const Grid& g = f.grid();
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << format_real(g.x(i)) << ' ' << format_real(f[i]) << '\n';
  }
}

void write_profile(const std::string& path, const Field& f,
                   const std::vector<std::pair<std::string, std::string>>& metadata) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  write_profile(out, f, metadata);
}

Profile read_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  Profile p;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t#");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      p.metadata[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
      continue;
    }
    std::istringstream row(line);
    double x = 0.0;
    double v = 0.0;
    if (!(row >> x >> v)) throw Error(ErrorKind::Io, "malformed profile row in '" + path + "'");
    p.x.push_back(x);
    p.values.push_back(v);
  }
  return p;
}

}  // namespace selfsim
