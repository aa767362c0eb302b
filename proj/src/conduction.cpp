// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "conduction.hpp"

#include <algorithm>
#include <cmath>

#include "synfocus/error.hpp"

namespace synfocus::detail {

ConductionOperator::ConductionOperator(const Grid& grid, std::span<const double> sigma)
    : grid_(grid),
      nx_(grid.count(0)),
      ny_(grid.count(1)),
      x_factor_(grid.spacing()[1] / grid.spacing()[0]),
      y_factor_(grid.spacing()[0] / grid.spacing()[1]),
      sigma_(sigma.begin(), sigma.end()),
      tx_((nx_ - 1) * ny_),
      ty_(nx_ * (ny_ - 1)),
      diag_(grid.size(), 0.0) {
  if (grid.dim() != 2) throw InvalidArgument("conduction: only 2D grids are supported");
  if (sigma.size() != grid.size()) throw InvalidArgument("conduction: sigma size mismatch");
  for (double s : sigma_)
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("conduction: sigma must be positive");
  for (std::size_t j = 0; j < ny_; ++j)
    for (std::size_t i = 0; i + 1 < nx_; ++i)
      tx_[i + (nx_ - 1) * j] =
          x_factor_ * harmonic_mean(sigma_[grid.index(i, j)], sigma_[grid.index(i + 1, j)]);
  for (std::size_t j = 0; j + 1 < ny_; ++j)
    for (std::size_t i = 0; i < nx_; ++i)
      ty_[i + nx_ * j] =
          y_factor_ * harmonic_mean(sigma_[grid.index(i, j)], sigma_[grid.index(i, j + 1)]);
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const auto [i, j, k] = grid.unravel(c);
    double d = 0.0;
    if (i > 0) d += tx(i - 1, j);
    if (i + 1 < nx_) d += tx(i, j);
    if (j > 0) d += ty(i, j - 1);
    if (j + 1 < ny_) d += ty(i, j);
    diag_[c] = d;
  }
}

void ConductionOperator::refresh_faces_of(std::size_t cell) {
  const auto [i, j, k] = grid_.unravel(cell);
  auto s = [&](std::size_t a, std::size_t b) { return sigma_[grid_.index(a, b)]; };
  if (i > 0) tx_[(i - 1) + (nx_ - 1) * j] = x_factor_ * harmonic_mean(s(i - 1, j), s(i, j));
  if (i + 1 < nx_) tx_[i + (nx_ - 1) * j] = x_factor_ * harmonic_mean(s(i, j), s(i + 1, j));
  if (j > 0) ty_[i + nx_ * (j - 1)] = y_factor_ * harmonic_mean(s(i, j - 1), s(i, j));
  if (j + 1 < ny_) ty_[i + nx_ * j] = y_factor_ * harmonic_mean(s(i, j), s(i, j + 1));
}

void ConductionOperator::set_sigma(std::span<const std::size_t> cells,
                                   std::span<const double> values) {
  for (std::size_t n = 0; n < cells.size(); ++n) sigma_[cells[n]] = values[n];
  for (std::size_t c : cells) refresh_faces_of(c);
  // Diagonal entries of the touched cells and their neighbours.
  for (std::size_t c : cells) {
    const auto [i, j, k] = grid_.unravel(c);
    for (int di = -1; di <= 1; ++di)
      for (int dj = -1; dj <= 1; ++dj) {
        if (di != 0 && dj != 0) continue;
        const long a = static_cast<long>(i) + di, b = static_cast<long>(j) + dj;
        if (a < 0 || b < 0 || a >= static_cast<long>(nx_) || b >= static_cast<long>(ny_)) continue;
        const std::size_t ia = static_cast<std::size_t>(a), jb = static_cast<std::size_t>(b);
        double d = 0.0;
        if (ia > 0) d += tx(ia - 1, jb);
        if (ia + 1 < nx_) d += tx(ia, jb);
        if (jb > 0) d += ty(ia, jb - 1);
        if (jb + 1 < ny_) d += ty(ia, jb);
        diag_[grid_.index(ia, jb)] = d;
      }
  }
}

void ConductionOperator::apply(std::span<const double> u, std::span<double> out) const {
  for (std::size_t j = 0; j < ny_; ++j) {
    for (std::size_t i = 0; i < nx_; ++i) {
      const std::size_t c = i + nx_ * j;
      double acc = diag_[c] * u[c];
      if (i > 0) acc -= tx_[(i - 1) + (nx_ - 1) * j] * u[c - 1];
      if (i + 1 < nx_) acc -= tx_[i + (nx_ - 1) * j] * u[c + 1];
      if (j > 0) acc -= ty_[i + nx_ * (j - 1)] * u[c - nx_];
      if (j + 1 < ny_) acc -= ty_[i + nx_ * j] * u[c + nx_];
      out[c] = acc;
    }
  }
}

void ConductionOperator::apply_difference(const ConductionOperator& base,
                                          std::span<const double> u, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  auto face = [&](double dt, std::size_t a, std::size_t b) {
    if (dt == 0.0) return;
    const double flux = dt * (u[a] - u[b]);
    out[a] += flux;
    out[b] -= flux;
  };
  for (std::size_t j = 0; j < ny_; ++j)
    for (std::size_t i = 0; i + 1 < nx_; ++i) {
      const std::size_t f = i + (nx_ - 1) * j, c = i + nx_ * j;
      face(tx_[f] - base.tx_[f], c, c + 1);
    }
  for (std::size_t j = 0; j + 1 < ny_; ++j)
    for (std::size_t i = 0; i < nx_; ++i) {
      const std::size_t f = i + nx_ * j, c = i + nx_ * j;
      face(ty_[f] - base.ty_[f], c, c + nx_);
    }
}

CgResult ConductionOperator::solve(std::span<const double> b, std::span<double> x, double tol,
                                   std::size_t max_iterations) const {
  const std::size_t n = size();
  auto dotp = [n](std::span<const double> a, std::span<const double> c) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * c[i];
    return s;
  };
  const double bnorm = std::sqrt(dotp(b, b));
  CgResult result;
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    result.converged = true;
    return result;
  }
  std::vector<double> r(n), z(n), p(n), ap(n);
  std::size_t it = 0;
  // Restarts guard against drift between the recursive and the true residual.
  for (int restart = 0; restart < 8; ++restart) {
    apply(x, ap);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
    double rnorm = std::sqrt(dotp(r, r));
    result.residual = rnorm / bnorm;
    if (rnorm <= tol * bnorm || it >= max_iterations) break;
    for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag_[i];
    p = z;
    double rz = dotp(r, z);
    while (rnorm > tol * bnorm && it < max_iterations) {
      apply(p, ap);
      const double pap = dotp(p, ap);
      if (!(pap > 0.0)) break;
      const double alpha = rz / pap;
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * ap[i];
      }
      for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag_[i];
      const double rz_next = dotp(r, z);
      const double beta = rz_next / rz;
      rz = rz_next;
      for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
      rnorm = std::sqrt(dotp(r, r));
      ++it;
    }
  }
  result.iterations = it;
  result.converged = result.residual <= tol;
  return result;
}

}  // namespace synfocus::detail
