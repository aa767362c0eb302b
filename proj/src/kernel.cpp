// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "synfocus/kernel.hpp"

#include <cmath>

#include "synfocus/error.hpp"

namespace synfocus {

KernelMatrix::KernelMatrix(BoundaryElectrodes electrodes, Grid interior)
    : electrodes_(std::move(electrodes)),
      interior_(interior),
      values_(electrodes_.size() * interior_.size(), 0.0) {}

KernelMatrix::KernelMatrix(BoundaryElectrodes electrodes, Grid interior, std::vector<double> values)
    : electrodes_(std::move(electrodes)), interior_(interior), values_(std::move(values)) {
  if (values_.size() != electrodes_.size() * interior_.size())
    throw InvalidArgument("kernel: value count does not match electrodes x pixels");
  for (double v : values_)
    if (!std::isfinite(v)) throw NumericalError("kernel: non-finite entry");
}

KernelMatrix KernelMatrix::from_rows(BoundaryElectrodes electrodes,
                                     std::span<const ScalarField> rows) {
  if (rows.size() != electrodes.size()) throw InvalidArgument("kernel: one row per electrode");
  if (rows.empty()) throw InvalidArgument("kernel: no rows");
  const Grid grid = rows.front().grid();
  std::vector<double> values;
  values.reserve(rows.size() * grid.size());
  for (const ScalarField& f : rows) {
    if (!(f.grid() == grid)) throw InvalidArgument("kernel: rows on different grids");
    values.insert(values.end(), f.values().begin(), f.values().end());
  }
  return KernelMatrix(std::move(electrodes), grid, std::move(values));
}

ScalarField KernelMatrix::row_field(std::size_t j) const {
  const auto r = row(j);
  return ScalarField(interior_, std::vector<double>(r.begin(), r.end()));
}

std::vector<double> KernelMatrix::apply(const ScalarField& f) const {
  if (!(f.grid() == interior_)) throw InvalidArgument("kernel: field not on the interior grid");
  const double area = interior_.cell_measure();
  std::vector<double> out(rows(), 0.0);
  for (std::size_t j = 0; j < rows(); ++j) {
    const auto r = row(j);
    double s = 0.0;
    for (std::size_t i = 0; i < cols(); ++i) s += r[i] * f[i];
    out[j] = s * area;
  }
  return out;
}

double relative_frobenius(const KernelMatrix& a, const KernelMatrix& b) {
  if (a.rows() != b.rows() || !(a.interior() == b.interior()))
    throw InvalidArgument("kernel: shape mismatch");
  return relative_l2(a.values(), b.values());
}

}  // namespace synfocus
