// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference vs OpenMP path for the dense kernels.

#include <benchmark/benchmark.h>

#include "synfocus/electrodes.hpp"
#include "synfocus/focusing.hpp"
#include "synfocus/forward_eit.hpp"
#include "synfocus/phantom.hpp"
#include "synfocus/wavegen.hpp"

namespace {

using namespace synfocus;

struct Fixture {
  Grid grid = Grid::cube(2, 32, -0.5, 0.5);
  Grid interior = Grid::cube(2, 16, -0.5, 0.5);
  Phantom phantom = build_phantom_disks(grid, default_disks());
  BoundaryElectrodes electrodes = BoundaryElectrodes::square_boundary(grid, CurrentPattern::left_right);
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

const KernelMatrix& kernel() {
  static const KernelMatrix k = kernel_adjoint(fixture().phantom, fixture().electrodes, fixture().interior);
  return k;
}

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void BM_KernelBruteforce(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        kernel_bruteforce(f.phantom, f.electrodes, f.interior, 1e-3, {}, exec_of(state)));
}
BENCHMARK(BM_KernelBruteforce)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_KernelAdjoint(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state)
    benchmark::DoNotOptimize(kernel_adjoint(f.phantom, f.electrodes, f.interior, {}, exec_of(state)));
}
BENCHMARK(BM_KernelAdjoint)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_LineIntegrals(benchmark::State& state) {
  const auto angles = uniform_angles(90);
  const auto offsets = covering_offsets(kernel().interior(), 47);
  for (auto _ : state)
    benchmark::DoNotOptimize(measure_line_integrals(kernel(), angles, offsets, exec_of(state)));
}
BENCHMARK(BM_LineIntegrals)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_XrayFocus(benchmark::State& state) {
  const auto data = measure_line_integrals(kernel(), uniform_angles(90),
                                           covering_offsets(kernel().interior(), 47));
  for (auto _ : state)
    benchmark::DoNotOptimize(focus_kernel(data, FocusMethod::xray, kernel().interior(),
                                          kernel().electrodes(), exec_of(state)));
}
BENCHMARK(BM_XrayFocus)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
