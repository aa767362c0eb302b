// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "synfocus/electrodes.hpp"
#include "synfocus/kernel.hpp"
#include "synfocus/parallel.hpp"
#include "synfocus/phantom.hpp"

namespace synfocus {

/// Interior potential u and its boundary trace h at the electrodes, both
/// shifted so that the trace has zero mean.
struct ConductionSolution {
  ScalarField potential;
  std::vector<double> boundary_trace;
  /// Final relative residual ||b - A u|| / ||b|| of the linear solve.
  double residual = 0.0;
  std::size_t iterations = 0;
  /// |net flux through the boundary implied by u| / sum |g| * length.
  double flux_imbalance = 0.0;
};

struct ConductionOptions {
  double tol = 1e-10;
  /// 0 selects 20 * cell count.
  std::size_t max_iterations = 0;
};

/// Solves div(sigma grad u) = 0 on the phantom grid with Neumann data
/// sigma du/dn = g at the electrodes: cell-centered 5-point finite volumes,
/// face conductivities are harmonic means, Jacobi-preconditioned CG.
ConductionSolution solve_conduction(const Phantom& phantom, const BoundaryElectrodes& electrodes,
                                    const ConductionOptions& options = {});

/// Subtracts the mean of the boundary trace from the trace and the potential.
void apply_gauge(ConductionSolution& solution);

struct KernelStats {
  std::size_t linear_solves = 0;
};

/// Ground-truth kernel by finite perturbation: column i is
/// (h[log sigma + eps on pixel i] - h) / (eps * pixel_area). The phantom grid
/// must refine the interior grid by an integer factor over the same square.
KernelMatrix kernel_bruteforce(const Phantom& phantom, const BoundaryElectrodes& electrodes,
                               const Grid& interior, double eps = 1e-3,
                               const ConductionOptions& options = {},
                               Exec exec = Exec::parallel, KernelStats* stats = nullptr);

/// Exact derivative of the discrete boundary trace with respect to pixel
/// log-conductivity, from one adjoint solve per electrode.
KernelMatrix kernel_adjoint(const Phantom& phantom, const BoundaryElectrodes& electrodes,
                            const Grid& interior, const ConductionOptions& options = {},
                            Exec exec = Exec::parallel, KernelStats* stats = nullptr);

}  // namespace synfocus
