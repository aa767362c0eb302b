// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>

namespace synfocus::detail {

/// Unnormalized in-place DFT, X[q] = sum_n x[n] exp(sign * 2 pi i q.n / N),
/// over an x-fastest array with the given per-axis counts (unused axes 1).
void dft(std::span<std::complex<double>> data, const std::array<std::size_t, 3>& counts,
         int sign);

}  // namespace synfocus::detail
