// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "synfocus/transducers.hpp"

#include <cmath>
#include <numbers>

#include "synfocus/error.hpp"

namespace synfocus {

TransducerArray::TransducerArray(int dim, double radius, double sound_speed,
                                 std::vector<Vec3> positions, std::vector<double> weights)
    : dim_(dim),
      radius_(radius),
      sound_speed_(sound_speed),
      positions_(std::move(positions)),
      weights_(std::move(weights)) {
  if (dim != 2 && dim != 3) throw InvalidArgument("transducers: dim must be 2 or 3");
  if (!(radius > 0.0)) throw InvalidArgument("transducers: radius must be positive");
  if (!(sound_speed > 0.0)) throw InvalidArgument("transducers: sound speed must be positive");
  if (positions_.size() != weights_.size())
    throw InvalidArgument("transducers: positions/weights size mismatch");
  normals_.reserve(positions_.size());
  for (const Vec3& z : positions_) {
    const double r = norm(z);
    if (std::abs(r - radius) > 1e-12 * radius)
      throw InvalidArgument("transducers: position off the aperture");
    normals_.push_back((1.0 / r) * z);
  }
}

double TransducerArray::aperture_measure() const {
  constexpr double pi = std::numbers::pi;
  return dim_ == 2 ? 2.0 * pi * radius_ : 4.0 * pi * radius_ * radius_;
}

TransducerArray make_transducer_array(int dim, double radius, std::size_t n, double sound_speed) {
  constexpr double pi = std::numbers::pi;
  if (!(radius > 0.0)) throw InvalidArgument("transducers: radius must be positive");
  if (n < 4) throw InvalidArgument("transducers: need at least 4 transducers");
  std::vector<Vec3> pos(n);
  const double nd = static_cast<double>(n);
  if (dim == 2) {
    for (std::size_t i = 0; i < n; ++i) {
      const double a = 2.0 * pi * static_cast<double>(i) / nd;
      pos[i] = {radius * std::cos(a), radius * std::sin(a), 0.0};
    }
  } else if (dim == 3) {
    const double golden = pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < n; ++i) {
      const double u = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / nd;
      const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
      const double phi = golden * static_cast<double>(i);
      pos[i] = {radius * s * std::cos(phi), radius * s * std::sin(phi), radius * u};
    }
  } else {
    throw InvalidArgument("transducers: dim must be 2 or 3");
  }
  // Renormalize so |z| = R holds to rounding.
  for (Vec3& z : pos) z = (radius / norm(z)) * z;
  const double measure = dim == 2 ? 2.0 * pi * radius : 4.0 * pi * radius * radius;
  return TransducerArray(dim, radius, sound_speed, std::move(pos),
                         std::vector<double>(n, measure / nd));
}

}  // namespace synfocus
