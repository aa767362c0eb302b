// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "synfocus/grid.hpp"

namespace synfocus {

/// Point ultrasound sources on a circle (2D) or sphere (3D) of radius R
/// centered at the origin, with outward normals and equal quadrature weights.
class TransducerArray {
 public:
  TransducerArray(int dim, double radius, double sound_speed, std::vector<Vec3> positions,
                  std::vector<double> weights);

  int dim() const { return dim_; }
  double radius() const { return radius_; }
  double sound_speed() const { return sound_speed_; }
  std::size_t size() const { return positions_.size(); }
  const std::vector<Vec3>& positions() const { return positions_; }
  const std::vector<Vec3>& normals() const { return normals_; }
  const std::vector<double>& weights() const { return weights_; }

  /// 2 pi R in 2D, 4 pi R^2 in 3D.
  double aperture_measure() const;

 private:
  int dim_;
  double radius_;
  double sound_speed_;
  std::vector<Vec3> positions_;
  std::vector<Vec3> normals_;
  std::vector<double> weights_;
};

/// 2D: n equally spaced angles starting at 0. 3D: Fibonacci lattice.
/// Weights are aperture_measure / n.
TransducerArray make_transducer_array(int dim, double radius, std::size_t n,
                                      double sound_speed = 1.0);

}  // namespace synfocus
