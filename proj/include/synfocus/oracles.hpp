// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "synfocus/grid.hpp"

namespace synfocus::oracles {

enum class PhantomKind { gaussian, ball };

/// Analytic validation phantom: amplitude * exp(-|x - c|^2 / (2 s^2)) or
/// amplitude on the closed ball |x - c| <= radius.
struct AnalyticPhantom {
  PhantomKind kind = PhantomKind::gaussian;
  Vec3 center{};
  double scale = 1.0;  ///< Gaussian width s or ball radius
  double amplitude = 1.0;
  int dim = 3;
};

double eval_phantom(const AnalyticPhantom& p, const Vec3& x);

/// Samples the phantom at the centers of \p grid.
ScalarField sample_phantom(const AnalyticPhantom& p, const Grid& grid);

/// Integral of the phantom over the circle (2D) / sphere (3D) |x - z| = t.
///
/// The rule is aligned with the phantom: angles are measured from the axis
/// z -> center. In 3D the polar variable uses composite Gauss-Legendre panels
/// (split at the ball boundary, graded toward the center for Gaussians) and
/// the azimuth 8 uniform samples; in 2D the circle uses the trapezoid rule,
/// or Gauss-Legendre split at the ball boundary. n_quad is the total node
/// budget (>= 64).
double spherical_mean_quadrature(const AnalyticPhantom& p, const Vec3& z, double t,
                                 std::size_t n_quad);

/// Line integral over {x : x.(cos a, sin a) = offset}; 2D phantoms only.
double disk_sinogram(const AnalyticPhantom& p, double angle, double offset);

/// One fixture row: transducer position, radius and oracle value.
struct FixtureRow {
  Vec3 z{};
  double t = 0.0;
  double value = 0.0;
};

/// CSV "z_x,z_y,z_z,t,value" with a header comment naming the phantom.
void write_fixture_csv(std::ostream& os, const AnalyticPhantom& p, std::span<const FixtureRow> rows);

}  // namespace synfocus::oracles
