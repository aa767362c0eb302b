// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "synfocus/error.hpp"

namespace synfocus::detail {

namespace {
// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex planner_mutex;
}

void dft(std::span<std::complex<double>> data, const std::array<std::size_t, 3>& counts,
         int sign) {
  int dims[3];
  int rank = 0;
  for (int a = 2; a >= 0; --a)
    if (counts[a] > 1) dims[rank++] = static_cast<int>(counts[a]);
  if (rank == 0) return;
  if (data.size() != counts[0] * counts[1] * counts[2])
    throw InvalidArgument("dft: data size does not match counts");
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex);
    plan = fftw_plan_dft(rank, dims, ptr, ptr, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                         FFTW_ESTIMATE);
  }
  if (!plan) throw NumericalError("dft: FFTW planning failed");
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex);
  fftw_destroy_plan(plan);
}

}  // namespace synfocus::detail
