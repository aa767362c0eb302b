// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "synfocus/electrodes.hpp"
#include "synfocus/grid.hpp"

namespace synfocus {

/// Discretized measurement kernel l(x, y): one row per electrode y_j, one
/// column per interior pixel x_i. Entries are the boundary-potential change
/// per unit change of log-conductivity per unit pixel area, so that
/// delta_h_j = sum_i K(j, i) f_i * pixel_area for a perturbation f.
class KernelMatrix {
 public:
  KernelMatrix(BoundaryElectrodes electrodes, Grid interior);
  KernelMatrix(BoundaryElectrodes electrodes, Grid interior, std::vector<double> values);

  /// Stacks one field per electrode (all on the same grid) as kernel rows.
  static KernelMatrix from_rows(BoundaryElectrodes electrodes, std::span<const ScalarField> rows);

  const BoundaryElectrodes& electrodes() const { return electrodes_; }
  const Grid& interior() const { return interior_; }
  std::size_t rows() const { return electrodes_.size(); }
  std::size_t cols() const { return interior_.size(); }

  double operator()(std::size_t j, std::size_t i) const { return values_[j * cols() + i]; }
  double& operator()(std::size_t j, std::size_t i) { return values_[j * cols() + i]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  std::span<const double> row(std::size_t j) const { return {values_.data() + j * cols(), cols()}; }
  std::span<double> row(std::size_t j) { return {values_.data() + j * cols(), cols()}; }

  /// l(., y_j) as a field on the interior grid.
  ScalarField row_field(std::size_t j) const;

  /// Applies the operator: (L f)_j = sum_i K(j, i) f_i * pixel_area.
  std::vector<double> apply(const ScalarField& f) const;

 private:
  BoundaryElectrodes electrodes_;
  Grid interior_;
  std::vector<double> values_;
};

/// ||a - b||_F / ||b||_F.
double relative_frobenius(const KernelMatrix& a, const KernelMatrix& b);

}  // namespace synfocus
