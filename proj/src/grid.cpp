// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "synfocus/grid.hpp"

#include <cmath>
#include <sstream>

#include "synfocus/error.hpp"

namespace synfocus {

Grid::Grid(int dim, Vec3 origin, Vec3 spacing, std::array<std::size_t, 3> counts)
    : dim_(dim), origin_(origin), spacing_(spacing), counts_(counts) {
  if (dim != 2 && dim != 3) throw InvalidArgument("grid: dim must be 2 or 3");
  for (int a = 0; a < 3; ++a) {
    if (a < dim) {
      if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a]))
        throw InvalidArgument("grid: spacing must be positive on every axis");
      if (counts[a] < 2) throw InvalidArgument("grid: counts must be >= 2 on every axis");
      if (!std::isfinite(origin[a])) throw InvalidArgument("grid: origin must be finite");
    } else {
      counts_[a] = 1;
      spacing_[a] = 1.0;
      origin_[a] = 0.0;
    }
  }
}

Grid Grid::cube(int dim, std::size_t n, double lo, double hi) {
  if (!(hi > lo)) throw InvalidArgument("grid: empty interval");
  const double h = (hi - lo) / static_cast<double>(n);
  const double o = lo + 0.5 * h;
  return Grid(dim, {o, o, o}, {h, h, h}, {n, n, n});
}

std::array<std::size_t, 3> Grid::unravel(std::size_t idx) const {
  const std::size_t i = idx % counts_[0];
  idx /= counts_[0];
  const std::size_t j = idx % counts_[1];
  return {i, j, idx / counts_[1]};
}

Vec3 Grid::center(std::size_t i, std::size_t j, std::size_t k) const {
  Vec3 c{origin_[0] + static_cast<double>(i) * spacing_[0],
         origin_[1] + static_cast<double>(j) * spacing_[1], 0.0};
  if (dim_ == 3) c[2] = origin_[2] + static_cast<double>(k) * spacing_[2];
  return c;
}

Vec3 Grid::center(std::size_t idx) const {
  const auto [i, j, k] = unravel(idx);
  return center(i, j, k);
}

Vec3 Grid::lower() const {
  Vec3 p{};
  for (int a = 0; a < dim_; ++a) p[a] = origin_[a] - 0.5 * spacing_[a];
  return p;
}

Vec3 Grid::upper() const {
  Vec3 p{};
  for (int a = 0; a < dim_; ++a)
    p[a] = origin_[a] + (static_cast<double>(counts_[a]) - 0.5) * spacing_[a];
  return p;
}

double Grid::cell_measure() const {
  double m = 1.0;
  for (int a = 0; a < dim_; ++a) m *= spacing_[a];
  return m;
}

double Grid::domain_measure() const { return cell_measure() * static_cast<double>(size()); }

double Grid::diameter() const { return norm(upper() - lower()); }

double Grid::min_spacing() const {
  double h = spacing_[0];
  for (int a = 1; a < dim_; ++a) h = std::min(h, spacing_[a]);
  return h;
}

bool Grid::contains(const Vec3& p) const {
  const Vec3 lo = lower(), hi = upper();
  for (int a = 0; a < dim_; ++a)
    if (p[a] < lo[a] || p[a] > hi[a]) return false;
  return true;
}

ScalarField::ScalarField(Grid grid) : grid_(grid), values_(grid.size(), 0.0) {}

ScalarField::ScalarField(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    std::ostringstream msg;
    msg << "scalar field: " << values_.size() << " values for a grid of " << grid_.size()
        << " cells";
    throw InvalidArgument(msg.str());
  }
}

void ScalarField::check_finite(const char* what) const {
  for (double v : values_)
    if (!std::isfinite(v)) throw NumericalError(std::string(what) + ": non-finite value in field");
}

double relative_l2(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("relative_l2: size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
  return std::sqrt(num / den);
}

}  // namespace synfocus
