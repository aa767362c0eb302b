// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "synfocus/grid.hpp"

namespace synfocus::detail {

struct CgResult {
  double residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Cell-centered finite-volume conduction operator on a 2D grid:
/// (A u)_c = sum over interior faces T_f (u_c - u_nb).
class ConductionOperator {
 public:
  ConductionOperator(const Grid& grid, std::span<const double> sigma);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return grid_.size(); }
  std::span<const double> sigma() const { return sigma_; }

  /// Transmissibility of the face between (i,j) and (i+1,j) / (i,j+1).
  double tx(std::size_t i, std::size_t j) const { return tx_[i + (nx_ - 1) * j]; }
  double ty(std::size_t i, std::size_t j) const { return ty_[i + nx_ * j]; }

  /// Replaces sigma on the given cells and refreshes the adjacent faces.
  void set_sigma(std::span<const std::size_t> cells, std::span<const double> values);

  void apply(std::span<const double> u, std::span<double> out) const;

  /// out = (A - A_base) u, face by face. Faces with equal transmissibility
  /// contribute nothing, so the result is local and sums to zero.
  void apply_difference(const ConductionOperator& base, std::span<const double> u,
                        std::span<double> out) const;

  /// Jacobi-preconditioned CG for A x = b. \p x holds the initial guess.
  CgResult solve(std::span<const double> b, std::span<double> x, double tol,
                 std::size_t max_iterations) const;

  /// Transmissibility scale factors (face length / center distance).
  double x_factor() const { return x_factor_; }
  double y_factor() const { return y_factor_; }

 private:
  void refresh_faces_of(std::size_t cell);

  Grid grid_;
  std::size_t nx_, ny_;
  double x_factor_, y_factor_;
  std::vector<double> sigma_;
  std::vector<double> tx_, ty_;
  std::vector<double> diag_;
};

inline double harmonic_mean(double a, double b) { return 2.0 * a * b / (a + b); }

/// d/d(log a) of harmonic_mean(a, b).
inline double harmonic_mean_dlog(double a, double b) {
  const double s = a + b;
  return 2.0 * a * b * b / (s * s);
}

}  // namespace synfocus::detail
