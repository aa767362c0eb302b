// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "synfocus/phantom.hpp"

#include <cmath>
#include <sstream>

#include "synfocus/error.hpp"

namespace synfocus {

Phantom build_phantom_disks(const Grid& grid, std::span<const Disk> disks) {
  const Vec3 lo = grid.lower(), hi = grid.upper();
  for (std::size_t d = 0; d < disks.size(); ++d) {
    const Disk& disk = disks[d];
    std::ostringstream msg;
    msg << "phantom: disk " << d << " (center " << disk.center[0] << "," << disk.center[1]
        << ", radius " << disk.radius << ", amplitude " << disk.amplitude << ")";
    if (!(disk.radius > 0.0)) throw InvalidArgument(msg.str() + " has non-positive radius");
    if (!(std::abs(disk.amplitude) <= 1.0))
      throw InvalidArgument(msg.str() + " has amplitude outside [-1, 1]");
    for (int a = 0; a < grid.dim(); ++a) {
      if (disk.center[a] - disk.radius < lo[a] || disk.center[a] + disk.radius > hi[a])
        throw InvalidArgument(msg.str() + " extends outside the domain");
    }
  }

  ScalarField field(grid);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const Vec3 x = grid.center(idx);
    double v = 0.0;
    for (const Disk& disk : disks) {
      if (norm(x - disk.center) <= disk.radius) v += disk.amplitude;
    }
    field[idx] = v;
  }
  return Phantom(std::move(field), std::vector<Disk>(disks.begin(), disks.end()));
}

Phantom phantom_from_field(ScalarField log_sigma) {
  log_sigma.check_finite("phantom");
  return Phantom(std::move(log_sigma), {});
}

std::vector<Disk> default_disks() {
  return {
      {{-0.20, 0.17, 0.0}, 0.12, 0.05},
      {{0.18, -0.12, 0.0}, 0.15, -0.05},
      {{0.22, 0.26, 0.0}, 0.08, 0.05},
      {{-0.16, -0.24, 0.0}, 0.10, -0.05},
  };
}

}  // namespace synfocus
