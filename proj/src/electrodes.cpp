// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "synfocus/electrodes.hpp"

#include <cmath>

#include "synfocus/error.hpp"

namespace synfocus {

BoundaryElectrodes BoundaryElectrodes::square_boundary(const Grid& grid, CurrentPattern pattern) {
  return square_boundary(grid, [pattern](const Vec3&, const Vec3& n) {
    return pattern == CurrentPattern::left_right ? -n[0] : 0.0;
  });
}

BoundaryElectrodes BoundaryElectrodes::square_boundary(const Grid& grid, const CurrentFn& current) {
  if (grid.dim() != 2) throw InvalidArgument("electrodes: conduction grid must be 2D");
  const std::size_t nx = grid.count(0), ny = grid.count(1);
  const Vec3 lo = grid.lower(), hi = grid.upper();
  const double hx = grid.spacing()[0], hy = grid.spacing()[1];

  BoundaryElectrodes e;
  e.grid_ = grid;
  auto add = [&](std::size_t i, std::size_t j, Vec3 p, Vec3 n, double len) {
    e.points_.push_back(p);
    e.normals_.push_back(n);
    e.lengths_.push_back(len);
    e.cells_.push_back(grid.index(i, j));
    e.currents_.push_back(current(p, n));
  };
  for (std::size_t i = 0; i < nx; ++i)
    add(i, 0, {grid.center(i, 0)[0], lo[1], 0.0}, {0.0, -1.0, 0.0}, hx);
  for (std::size_t j = 0; j < ny; ++j)
    add(nx - 1, j, {hi[0], grid.center(0, j)[1], 0.0}, {1.0, 0.0, 0.0}, hy);
  for (std::size_t i = nx; i-- > 0;)
    add(i, ny - 1, {grid.center(i, 0)[0], hi[1], 0.0}, {0.0, 1.0, 0.0}, hx);
  for (std::size_t j = ny; j-- > 0;)
    add(0, j, {lo[0], grid.center(0, j)[1], 0.0}, {-1.0, 0.0, 0.0}, hy);
  for (double c : e.currents_)
    if (!std::isfinite(c)) throw InvalidArgument("electrodes: non-finite current");
  return e;
}

BoundaryElectrodes BoundaryElectrodes::probe(const Vec3& point) {
  BoundaryElectrodes e;
  e.points_ = {point};
  e.normals_ = {Vec3{}};
  e.lengths_ = {1.0};
  e.currents_ = {0.0};
  e.cells_ = {0};
  return e;
}

BoundaryElectrodes BoundaryElectrodes::from_parts(std::optional<Grid> grid, std::vector<Vec3> points,
                                                  std::vector<Vec3> normals,
                                                  std::vector<double> lengths,
                                                  std::vector<double> currents,
                                                  std::vector<std::size_t> cells) {
  const std::size_t n = points.size();
  if (normals.size() != n || lengths.size() != n || currents.size() != n || cells.size() != n)
    throw InvalidArgument("electrodes: inconsistent part sizes");
  if (grid) {
    for (std::size_t c : cells)
      if (c >= grid->size()) throw InvalidArgument("electrodes: cell index outside grid");
  }
  BoundaryElectrodes e;
  e.grid_ = std::move(grid);
  e.points_ = std::move(points);
  e.normals_ = std::move(normals);
  e.lengths_ = std::move(lengths);
  e.currents_ = std::move(currents);
  e.cells_ = std::move(cells);
  return e;
}

double BoundaryElectrodes::net_current() const {
  double s = 0.0;
  for (std::size_t k = 0; k < size(); ++k) s += currents_[k] * lengths_[k];
  return s;
}

double BoundaryElectrodes::total_abs_current() const {
  double s = 0.0;
  for (std::size_t k = 0; k < size(); ++k) s += std::abs(currents_[k]) * lengths_[k];
  return s;
}

BoundaryElectrodes BoundaryElectrodes::with_currents(std::vector<double> currents) const {
  if (currents.size() != size()) throw InvalidArgument("electrodes: current count mismatch");
  BoundaryElectrodes e = *this;
  e.currents_ = std::move(currents);
  return e;
}

}  // namespace synfocus
