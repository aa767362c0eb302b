// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "synfocus/grid.hpp"

namespace synfocus::detail {

/// Sparse linear functional over grid cells, built sample by sample.
/// Entries are kept in first-touch order so that reductions are reproducible.
class SparseFunctional {
 public:
  explicit SparseFunctional(std::size_t n) : weight_(n, 0.0), seen_(n, 0) {}

  void add(std::size_t idx, double w) {
    if (!seen_[idx]) {
      seen_[idx] = 1;
      touched_.push_back(idx);
    }
    weight_[idx] += w;
  }

  /// out[j] = sum_p weight[p] * rows_t[p * n_out + j] (rows_t pixel-major).
  void apply(std::span<const double> rows_t, std::span<double> out) const {
    const std::size_t n_out = out.size();
    for (std::size_t p : touched_) {
      const double w = weight_[p];
      const double* r = rows_t.data() + p * n_out;
      for (std::size_t j = 0; j < n_out; ++j) out[j] += w * r[j];
    }
  }

  void clear() {
    for (std::size_t p : touched_) {
      weight_[p] = 0.0;
      seen_[p] = 0;
    }
    touched_.clear();
  }

 private:
  std::vector<double> weight_;
  std::vector<unsigned char> seen_;
  std::vector<std::size_t> touched_;
};

/// Adds w times the multilinear interpolation stencil at x. Cell centers are
/// the nodes; beyond the outermost centers the field decays linearly to zero
/// over one spacing.
inline void splat(const Grid& g, const Vec3& x, double w, SparseFunctional& f) {
  const int dim = g.dim();
  long i0[3] = {0, 0, 0};
  double t[3] = {0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) {
    const double s = (x[a] - g.origin()[a]) / g.spacing()[a];
    if (s <= -1.0 || s >= static_cast<double>(g.count(a))) return;
    const double fl = std::floor(s);
    i0[a] = static_cast<long>(fl);
    t[a] = s - fl;
  }
  const int corners = dim == 2 ? 4 : 8;
  for (int c = 0; c < corners; ++c) {
    double wc = w;
    std::size_t idx[3] = {0, 0, 0};
    bool inside = true;
    for (int a = 0; a < dim; ++a) {
      const int bit = (c >> a) & 1;
      const long ia = i0[a] + bit;
      if (ia < 0 || ia >= static_cast<long>(g.count(a))) {
        inside = false;
        break;
      }
      idx[a] = static_cast<std::size_t>(ia);
      wc *= bit ? t[a] : 1.0 - t[a];
    }
    if (inside && wc != 0.0) f.add(g.index(idx[0], idx[1], idx[2]), wc);
  }
}

/// Pixel-major copy of the kernel rows: out[p * rows + j] = K(j, p).
inline std::vector<double> transpose_rows(std::span<const double> values, std::size_t rows,
                                          std::size_t cols) {
  std::vector<double> t(values.size());
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t p = 0; p < cols; ++p) t[p * rows + j] = values[j * cols + p];
  return t;
}

}  // namespace synfocus::detail
