// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace synfocus {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

/// Uniform Cartesian cell lattice in 2 or 3 dimensions.
///
/// Samples live at cell centers: `origin` is the center of cell (0,0,0) and
/// the cell with index (i,j,k) is centered at origin + (i,j,k) * spacing. The
/// lattice covers the box [origin - spacing/2, origin + (counts - 1/2) * spacing].
/// Unused axes of a 2D grid have count 1, spacing 1 and origin 0.
/// Linear indices are row-major with x fastest: i + nx * (j + ny * k).
class Grid {
 public:
  Grid(int dim, Vec3 origin, Vec3 spacing, std::array<std::size_t, 3> counts);

  /// Grid of n cells per axis exactly tiling [lo, hi]^dim.
  static Grid cube(int dim, std::size_t n, double lo, double hi);

  int dim() const { return dim_; }
  const Vec3& origin() const { return origin_; }
  const Vec3& spacing() const { return spacing_; }
  const std::array<std::size_t, 3>& counts() const { return counts_; }
  std::size_t count(int axis) const { return counts_[axis]; }

  std::size_t size() const { return counts_[0] * counts_[1] * counts_[2]; }
  std::size_t index(std::size_t i, std::size_t j, std::size_t k = 0) const {
    return i + counts_[0] * (j + counts_[1] * k);
  }
  std::array<std::size_t, 3> unravel(std::size_t idx) const;

  Vec3 center(std::size_t i, std::size_t j, std::size_t k = 0) const;
  Vec3 center(std::size_t idx) const;

  /// Lower / upper corners of the covered box (unused axes are 0).
  Vec3 lower() const;
  Vec3 upper() const;

  /// Area (2D) or volume (3D) of one cell.
  double cell_measure() const;
  /// Area (2D) or volume (3D) of the covered box.
  double domain_measure() const;
  /// Length of the box diagonal.
  double diameter() const;
  double min_spacing() const;

  bool contains(const Vec3& p) const;

  bool operator==(const Grid& other) const = default;

 private:
  int dim_;
  Vec3 origin_;
  Vec3 spacing_;
  std::array<std::size_t, 3> counts_;
};

/// Real scalar samples on a Grid.
class ScalarField {
 public:
  explicit ScalarField(Grid grid);
  ScalarField(Grid grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  std::size_t size() const { return values_.size(); }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  /// Throws NumericalError if any value is NaN or infinite.
  void check_finite(const char* what) const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// ||a - b||_2 / ||b||_2 over the whole array.
double relative_l2(std::span<const double> a, std::span<const double> b);

}  // namespace synfocus
