// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace selfsim {

/// Uniform 1-D grid. Node i sits at x_min + i*dx; positions are never
/// accumulated, so there is no drift across the domain.
class Grid {
 public:
  Grid(double x_min, double x_max, std::size_t n_points);

  /// Grid whose spacing is as close to `dx` as an integer node count allows.
  static Grid with_spacing(double x_min, double x_max, double dx);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  double dx() const noexcept { return dx_; }
  std::size_t size() const noexcept { return n_; }
  double x(std::size_t i) const noexcept { return x_min_ + static_cast<double>(i) * dx_; }

  /// x_min == -x_max and the node count is odd, so x = 0 is a node.
  bool symmetric() const noexcept;
  std::size_t center_index() const noexcept { return n_ / 2; }

  bool operator==(const Grid& other) const noexcept = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_;
  double dx_;
};

enum class Interpolation { Linear, Cubic };

Interpolation parse_interpolation(const std::string& name);
const char* to_string(Interpolation order) noexcept;

/// Sampled solution values on a grid.
class Field {
 public:
  explicit Field(Grid grid);
  Field(Grid grid, std::vector<double> values);

  template <class F>
  static Field sample(const Grid& grid, F&& f) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.x(i));
    return Field(grid, std::move(v));
  }

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  std::vector<double>& data() noexcept { return values_; }
  const std::vector<double>& data() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }

  /// Throws Error(NonFinite) naming the first offending node.
  void check_finite() const;

  Field& operator*=(double s);
  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);

 private:
  Grid grid_;
  std::vector<double> values_;
};

Field operator*(double s, Field f);
Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);

double sup_norm(const Field& f);
double total_mass(const Field& f);

/// Linear: two-point. Cubic: four-point Lagrange on the enclosing stencil,
/// shifted one-sidedly at the boundaries.
double interpolate(const Field& f, double x, Interpolation order);

/// u_new(x_j) = u_old(space_factor * x_j); queries beyond the left/right end
/// of the domain return the matching outside value.
Field rescale_resample(const Field& f, double space_factor, Interpolation order,
                       double outside_left, double outside_right);

inline Field rescale_resample(const Field& f, double space_factor, Interpolation order,
                              double outside_value) {
  return rescale_resample(f, space_factor, order, outside_value, outside_value);
}

/// (f / sup_norm(f), sup_norm(f)).
std::pair<Field, double> normalize_amplitude(const Field& f);

/// Mirrors the right half onto the left with a sign flip; x = 0 becomes 0.
Field symmetrize_odd(const Field& f);

/// Two-column `x value` profile with `#`-prefixed `key = value` header lines.
struct Profile {
  std::map<std::string, std::string> metadata;
  std::vector<double> x;
  std::vector<double> values;
};

void write_profile(std::ostream& out, const Field& f,
                   const std::vector<std::pair<std::string, std::string>>& metadata);
void write_profile(const std::string& path, const Field& f,
                   const std::vector<std::pair<std::string, std::string>>& metadata);
Profile read_profile(const std::string& path);

/// Reals in output files use 15 significant digits.
std::string format_real(double v);

}  // namespace selfsim
