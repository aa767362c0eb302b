// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "synfocus/grid.hpp"

namespace synfocus {

struct Disk {
  Vec3 center{};
  double radius = 0.0;
  double amplitude = 0.0;
};

/// Piecewise-constant log-conductivity: background 0 plus disk amplitudes.
class Phantom {
 public:
  Phantom(ScalarField log_sigma, std::vector<Disk> disks)
      : field_(std::move(log_sigma)), disks_(std::move(disks)) {}

  const ScalarField& field() const { return field_; }
  const Grid& grid() const { return field_.grid(); }
  const std::vector<Disk>& disks() const { return disks_; }

 private:
  ScalarField field_;
  std::vector<Disk> disks_;
};

/// Rasterizes disks onto `grid` by the pixel-center test |x - c| <= r; the
/// amplitudes of overlapping disks add. Disks must lie inside the grid box
/// and have amplitudes in [-1, 1].
Phantom build_phantom_disks(const Grid& grid, std::span<const Disk> disks);

/// Phantom from an arbitrary log-conductivity field (no disk description).
Phantom phantom_from_field(ScalarField log_sigma);

/// Four +-0.05 disks inside the square [-1/2, 1/2]^2.
std::vector<Disk> default_disks();

}  // namespace synfocus
