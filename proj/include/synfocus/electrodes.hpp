// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "synfocus/grid.hpp"

namespace synfocus {

enum class CurrentPattern {
  left_right,  ///< +1 inflow on the left edge, -1 outflow on the right edge, 0 elsewhere.
  none,        ///< zero current everywhere
};

/// Boundary measurement points y_j with the fixed injected current pattern g.
///
/// For the square conduction domain every boundary face of the conduction
/// grid is one point electrode, ordered counter-clockwise starting at the
/// bottom-left corner. `current` is the Neumann datum sigma du/dn with n the
/// outward normal; with sigma = 1 the left_right pattern yields u = -x + c.
class BoundaryElectrodes {
 public:
  using CurrentFn = std::function<double(const Vec3& point, const Vec3& normal)>;

  static BoundaryElectrodes square_boundary(const Grid& conduction_grid, CurrentPattern pattern);
  static BoundaryElectrodes square_boundary(const Grid& conduction_grid, const CurrentFn& current);
  /// A single measurement point carrying no current (used by 3D experiments).
  static BoundaryElectrodes probe(const Vec3& point);
  /// Reassembles electrodes from serialized parts.
  static BoundaryElectrodes from_parts(std::optional<Grid> grid, std::vector<Vec3> points,
                                       std::vector<Vec3> normals, std::vector<double> lengths,
                                       std::vector<double> currents, std::vector<std::size_t> cells);

  std::size_t size() const { return points_.size(); }
  const std::vector<Vec3>& points() const { return points_; }
  const std::vector<Vec3>& normals() const { return normals_; }
  const std::vector<double>& lengths() const { return lengths_; }
  const std::vector<double>& currents() const { return currents_; }
  /// Index of the conduction-grid cell owning each boundary face.
  const std::vector<std::size_t>& cells() const { return cells_; }
  const std::optional<Grid>& conduction_grid() const { return grid_; }

  /// Sum of current * segment length; zero for compatible Neumann data.
  double net_current() const;
  /// Sum of |current| * segment length.
  double total_abs_current() const;

  /// Same geometry, scaled currents.
  BoundaryElectrodes with_currents(std::vector<double> currents) const;

 private:
  BoundaryElectrodes() = default;

  std::optional<Grid> grid_;
  std::vector<Vec3> points_;
  std::vector<Vec3> normals_;
  std::vector<double> lengths_;
  std::vector<double> currents_;
  std::vector<std::size_t> cells_;
};

}  // namespace synfocus
