// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "synfocus/forward_eit.hpp"

#include <cmath>
#include <sstream>

#include "conduction.hpp"
#include "synfocus/error.hpp"

namespace synfocus {

namespace {

using detail::ConductionOperator;

std::vector<double> conductivity(const Phantom& phantom) {
  std::vector<double> sigma(phantom.field().size());
  for (std::size_t c = 0; c < sigma.size(); ++c) sigma[c] = std::exp(phantom.field()[c]);
  return sigma;
}

void check_setup(const Phantom& phantom, const BoundaryElectrodes& electrodes) {
  if (phantom.grid().dim() != 2) throw InvalidArgument("conduction: phantom must be 2D");
  if (!electrodes.conduction_grid() || !(*electrodes.conduction_grid() == phantom.grid()))
    throw InvalidArgument("conduction: electrodes were not built on the phantom grid");
  const double scale = electrodes.total_abs_current();
  if (std::abs(electrodes.net_current()) > 1e-12 * std::max(scale, 1.0)) {
    std::ostringstream msg;
    msg << "incompatible Neumann data: net injected current " << electrodes.net_current();
    throw InvalidArgument(msg.str());
  }
}

// Distance from the owning cell center to each electrode face.
std::vector<double> half_widths(const BoundaryElectrodes& e, const Grid& grid) {
  std::vector<double> d(e.size());
  for (std::size_t k = 0; k < e.size(); ++k)
    d[k] = 0.5 * (e.normals()[k][0] != 0.0 ? grid.spacing()[0] : grid.spacing()[1]);
  return d;
}

std::size_t max_iters(const ConductionOptions& o, const Grid& g) {
  return o.max_iterations ? o.max_iterations : 20 * g.size();
}

void subtract_mean(std::vector<double>& h) {
  double mean = 0.0;
  for (double v : h) mean += v;
  mean /= static_cast<double>(h.size());
  for (double& v : h) v -= mean;
}

// Phantom cells covered by each interior pixel.
std::vector<std::vector<std::size_t>> pixel_blocks(const Grid& fine, const Grid& interior) {
  if (interior.dim() != 2) throw InvalidArgument("kernel: interior grid must be 2D");
  const double tol = 1e-9 * fine.diameter();
  for (int a = 0; a < 2; ++a) {
    if (fine.count(a) % interior.count(a) != 0)
      throw InvalidArgument("kernel: phantom grid must refine the interior grid by an integer factor");
    if (std::abs(fine.lower()[a] - interior.lower()[a]) > tol ||
        std::abs(fine.upper()[a] - interior.upper()[a]) > tol)
      throw InvalidArgument("kernel: interior grid must cover the phantom domain");
  }
  const std::size_t bx = fine.count(0) / interior.count(0);
  const std::size_t by = fine.count(1) / interior.count(1);
  std::vector<std::vector<std::size_t>> blocks(interior.size());
  for (std::size_t p = 0; p < interior.size(); ++p) {
    const auto [a, b, unused] = interior.unravel(p);
    for (std::size_t v = 0; v < by; ++v)
      for (std::size_t u = 0; u < bx; ++u) blocks[p].push_back(fine.index(a * bx + u, b * by + v));
  }
  return blocks;
}

}  // namespace

void apply_gauge(ConductionSolution& solution) {
  double mean = 0.0;
  for (double v : solution.boundary_trace) mean += v;
  mean /= static_cast<double>(solution.boundary_trace.size());
  for (double& v : solution.boundary_trace) v -= mean;
  for (double& v : solution.potential.values()) v -= mean;
}

ConductionSolution solve_conduction(const Phantom& phantom, const BoundaryElectrodes& electrodes,
                                    const ConductionOptions& options) {
  check_setup(phantom, electrodes);
  const Grid& grid = phantom.grid();
  const std::vector<double> sigma = conductivity(phantom);
  const ConductionOperator op(grid, sigma);

  std::vector<double> b(grid.size(), 0.0);
  for (std::size_t k = 0; k < electrodes.size(); ++k)
    b[electrodes.cells()[k]] += electrodes.currents()[k] * electrodes.lengths()[k];

  std::vector<double> u(grid.size(), 0.0);
  const auto cg = op.solve(b, u, options.tol, max_iters(options, grid));
  if (!cg.converged) {
    std::ostringstream msg;
    msg << "conduction solver did not converge: relative residual " << cg.residual << " after "
        << cg.iterations << " iterations";
    throw NumericalError(msg.str());
  }

  const auto d = half_widths(electrodes, grid);
  std::vector<double> trace(electrodes.size());
  for (std::size_t k = 0; k < electrodes.size(); ++k) {
    const std::size_t c = electrodes.cells()[k];
    trace[k] = u[c] + electrodes.currents()[k] * d[k] / sigma[c];
  }

  // Net flux leaving through the boundary cells' interior faces.
  std::vector<double> au(grid.size());
  op.apply(u, au);
  std::vector<bool> on_boundary(grid.size(), false);
  for (std::size_t c : electrodes.cells()) on_boundary[c] = true;
  double net = 0.0;
  for (std::size_t c = 0; c < grid.size(); ++c)
    if (on_boundary[c]) net += au[c];
  const double scale = electrodes.total_abs_current();

  ConductionSolution sol{ScalarField(grid, std::move(u)), std::move(trace), cg.residual,
                         cg.iterations, scale > 0.0 ? std::abs(net) / scale : 0.0};
  apply_gauge(sol);
  sol.potential.check_finite("conduction");
  return sol;
}

KernelMatrix kernel_bruteforce(const Phantom& phantom, const BoundaryElectrodes& electrodes,
                               const Grid& interior, double eps, const ConductionOptions& options,
                               Exec exec, KernelStats* stats) {
  if (!(eps > 0.0)) throw InvalidArgument("kernel: eps must be positive");
  const ConductionSolution base = solve_conduction(phantom, electrodes, options);
  const Grid& grid = phantom.grid();
  const auto blocks = pixel_blocks(grid, interior);
  const std::vector<double> sigma = conductivity(phantom);
  const ConductionOperator base_op(grid, sigma);
  const auto d = half_widths(electrodes, grid);
  const auto u = base.potential.values();
  const std::size_t n_pix = interior.size(), n_e = electrodes.size();
  const double scale = 1.0 / (eps * interior.cell_measure());
  const double factor = std::exp(eps);
  const std::size_t maxit = max_iters(options, grid);

  KernelMatrix kernel(electrodes, interior);
  bool failed = false;
  double worst = 0.0;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (std::size_t p = 0; p < n_pix; ++p) {
    // Solve the exact perturbed problem for the correction delta = u' - u:
    // A' delta = -(A' - A) u.
    ConductionOperator op = base_op;
    std::vector<double> perturbed(blocks[p].size());
    for (std::size_t n = 0; n < blocks[p].size(); ++n) perturbed[n] = sigma[blocks[p][n]] * factor;
    op.set_sigma(blocks[p], perturbed);

    std::vector<double> rhs(grid.size());
    op.apply_difference(base_op, u, rhs);
    for (double& v : rhs) v = -v;
    std::vector<double> delta(grid.size(), 0.0);
    const auto cg = op.solve(rhs, delta, options.tol, maxit);
    if (!cg.converged) {
#pragma omp critical
      {
        failed = true;
        worst = std::max(worst, cg.residual);
      }
    }
    std::vector<double> dh(n_e);
    const auto new_sigma = op.sigma();
    for (std::size_t k = 0; k < n_e; ++k) {
      const std::size_t c = electrodes.cells()[k];
      dh[k] = delta[c] + electrodes.currents()[k] * d[k] * (1.0 / new_sigma[c] - 1.0 / sigma[c]);
    }
    subtract_mean(dh);
    for (std::size_t k = 0; k < n_e; ++k) kernel(k, p) = dh[k] * scale;
  }
  if (failed) {
    std::ostringstream msg;
    msg << "kernel_bruteforce: perturbed solve did not converge (relative residual " << worst << ")";
    throw NumericalError(msg.str());
  }
  if (stats) stats->linear_solves = 1 + n_pix;
  return kernel;
}

KernelMatrix kernel_adjoint(const Phantom& phantom, const BoundaryElectrodes& electrodes,
                            const Grid& interior, const ConductionOptions& options, Exec exec,
                            KernelStats* stats) {
  const ConductionSolution base = solve_conduction(phantom, electrodes, options);
  const Grid& grid = phantom.grid();
  const auto blocks = pixel_blocks(grid, interior);
  const std::vector<double> sigma = conductivity(phantom);
  const ConductionOperator op(grid, sigma);
  const auto d = half_widths(electrodes, grid);
  const auto u = base.potential.values();
  const std::size_t n_e = electrodes.size();
  const std::size_t nx = grid.count(0), ny = grid.count(1);
  const double m_inv = 1.0 / static_cast<double>(n_e);
  const double area_inv = 1.0 / interior.cell_measure();
  const std::size_t maxit = max_iters(options, grid);

  std::vector<std::size_t> pixel_of(grid.size());
  for (std::size_t p = 0; p < blocks.size(); ++p)
    for (std::size_t c : blocks[p]) pixel_of[c] = p;

  // Direct dependence of h_k on sigma of its owning cell, before gauge.
  std::vector<double> direct(interior.size(), 0.0);
  for (std::size_t k = 0; k < n_e; ++k) {
    const std::size_t c = electrodes.cells()[k];
    direct[pixel_of[c]] -= electrodes.currents()[k] * d[k] / sigma[c];
  }
  std::vector<double> owner_count(grid.size(), 0.0);
  for (std::size_t c : electrodes.cells()) owner_count[c] += 1.0;

  KernelMatrix kernel(electrodes, interior);
  bool failed = false;
  double worst = 0.0;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (std::size_t j = 0; j < n_e; ++j) {
    const std::size_t cj = electrodes.cells()[j];
    std::vector<double> a(grid.size());
    for (std::size_t c = 0; c < grid.size(); ++c) a[c] = -owner_count[c] * m_inv;
    a[cj] += 1.0;
    std::vector<double> v(grid.size(), 0.0);
    const auto cg = op.solve(a, v, options.tol, maxit);
    if (!cg.converged) {
#pragma omp critical
      {
        failed = true;
        worst = std::max(worst, cg.residual);
      }
    }
    auto row = kernel.row(j);
    // -v^T (dA/dp) u, face by face.
    auto face = [&](std::size_t ca, std::size_t cb, double geom) {
      const double w = -(v[ca] - v[cb]) * (u[ca] - u[cb]) * geom;
      row[pixel_of[ca]] += w * detail::harmonic_mean_dlog(sigma[ca], sigma[cb]);
      row[pixel_of[cb]] += w * detail::harmonic_mean_dlog(sigma[cb], sigma[ca]);
    };
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t x = 0; x + 1 < nx; ++x)
        face(grid.index(x, y), grid.index(x + 1, y), op.x_factor());
    for (std::size_t y = 0; y + 1 < ny; ++y)
      for (std::size_t x = 0; x < nx; ++x)
        face(grid.index(x, y), grid.index(x, y + 1), op.y_factor());
    // Gauge-projected direct term.
    row[pixel_of[cj]] -= electrodes.currents()[j] * d[j] / sigma[cj];
    for (std::size_t p = 0; p < row.size(); ++p) row[p] = (row[p] - m_inv * direct[p]) * area_inv;
  }
  if (failed) {
    std::ostringstream msg;
    msg << "kernel_adjoint: adjoint solve did not converge (relative residual " << worst << ")";
    throw NumericalError(msg.str());
  }
  if (stats) stats->linear_solves = 1 + n_e;
  return kernel;
}

}  // namespace synfocus
