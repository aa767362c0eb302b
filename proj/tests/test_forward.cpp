// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "synfocus/electrodes.hpp"
#include "synfocus/error.hpp"
#include "synfocus/forward_eit.hpp"
#include "synfocus/phantom.hpp"

using namespace synfocus;
using synfocus::testing::bit_identical;

namespace {

std::vector<double> trace_of(std::size_t n, std::span<const Disk> disks) {
  const Grid g = Grid::cube(2, n, -0.5, 0.5);
  ConductionOptions opt;
  opt.tol = 1e-12;
  return solve_conduction(build_phantom_disks(g, disks),
                          BoundaryElectrodes::square_boundary(g, CurrentPattern::left_right), opt)
      .boundary_trace;
}

// Faces come in the same counter-clockwise order at every resolution, so a
// coarse face is the mean of r consecutive fine faces.
std::vector<double> coarsen(const std::vector<double>& fine, std::size_t r) {
  std::vector<double> c(fine.size() / r, 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    for (std::size_t q = 0; q < r; ++q) c[k] += fine[k * r + q];
    c[k] /= static_cast<double>(r);
  }
  return c;
}

double rel(const std::vector<double>& a, const std::vector<double>& b) { return relative_l2(a, b); }

// Log-conductivity field on the phantom grid from a field on the interior grid.
ScalarField upsample(const ScalarField& f, const Grid& fine) {
  ScalarField out(fine);
  const std::size_t r = fine.count(0) / f.grid().count(0);
  for (std::size_t c = 0; c < fine.size(); ++c) {
    const auto u = fine.unravel(c);
    out[c] = f[f.grid().index(u[0] / r, u[1] / r)];
  }
  return out;
}

}  // namespace

TEST_CASE("constant conductivity gives the linear potential") {
  const Grid g = Grid::cube(2, 64, -0.5, 0.5);
  const auto e = BoundaryElectrodes::square_boundary(g, CurrentPattern::left_right);
  ConductionOptions opt;
  opt.tol = 1e-12;
  const auto sol = solve_conduction(build_phantom_disks(g, {}), e, opt);
  std::vector<double> expect(e.size());
  double mean = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) mean += (expect[k] = -e.points()[k][0]);
  mean /= static_cast<double>(e.size());
  for (double& v : expect) v -= mean;
  CHECK(rel(sol.boundary_trace, expect) <= 1e-6);
  CHECK(sol.flux_imbalance <= 1e-10);
  CHECK(sol.residual <= 1e-12);
  // interior too
  for (std::size_t c = 1; c < g.size(); ++c) {
    const auto u = g.unravel(c);
    if (u[0] == 0) continue;
    CHECK(sol.potential[c] - sol.potential[c - 1] == doctest::Approx(-g.spacing()[0]).epsilon(1e-8));
  }
}

TEST_CASE("zero current gives zero potential") {
  const Grid g = Grid::cube(2, 32, -0.5, 0.5);
  const auto sol = solve_conduction(build_phantom_disks(g, default_disks()),
                                    BoundaryElectrodes::square_boundary(g, CurrentPattern::none));
  CHECK(synfocus::testing::max_abs(sol.potential.values()) == 0.0);
  CHECK(synfocus::testing::max_abs(sol.boundary_trace) == 0.0);
}

TEST_CASE("incompatible Neumann data are rejected") {
  const Grid g = Grid::cube(2, 16, -0.5, 0.5);
  // the literal reading: current 1 on both vertical sides
  const auto e = BoundaryElectrodes::square_boundary(
      g, [](const Vec3&, const Vec3& n) { return std::abs(n[0]) > 0.5 ? 1.0 : 0.0; });
  CHECK_THROWS_WITH_AS(solve_conduction(build_phantom_disks(g, {}), e),
                       doctest::Contains("incompatible Neumann data"), InvalidArgument);
}

TEST_CASE("solver non-convergence reports the residual") {
  const Grid g = Grid::cube(2, 16, -0.5, 0.5);
  ConductionOptions opt;
  opt.tol = 1e-30;
  opt.max_iterations = 3;
  CHECK_THROWS_WITH_AS(solve_conduction(build_phantom_disks(g, default_disks()),
                                        BoundaryElectrodes::square_boundary(g, CurrentPattern::left_right), opt),
                       doctest::Contains("residual"), NumericalError);
}

TEST_CASE("boundary flux is conserved and the gauge is mean zero") {
  const Grid g = Grid::cube(2, 64, -0.5, 0.5);
  const auto sol = solve_conduction(build_phantom_disks(g, default_disks()),
                                    BoundaryElectrodes::square_boundary(g, CurrentPattern::left_right));
  CHECK(sol.flux_imbalance <= 1e-10);
  double mean = 0.0;
  for (double v : sol.boundary_trace) mean += v;
  CHECK(std::abs(mean) <= 1e-12 * sol.boundary_trace.size());
  CHECK(sol.residual <= 1e-10);

  ConductionSolution shifted = sol;
  for (double& v : shifted.boundary_trace) v += 3.25;
  for (double& v : shifted.potential.values()) v += 3.25;
  apply_gauge(shifted);
  for (std::size_t k = 0; k < sol.boundary_trace.size(); ++k)
    CHECK(shifted.boundary_trace[k] == doctest::Approx(sol.boundary_trace[k]).epsilon(1e-12).scale(1.0));
  for (std::size_t c = 0; c < g.size(); ++c)
    CHECK(shifted.potential[c] == doctest::Approx(sol.potential[c]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("disk phantom perturbs the trace as the fine-grid oracle does") {
  // 512^2 solve of the same problem, frozen: |h - h_flat| / |h_flat|
  constexpr double kOraclePerturbation = 0.00382188;
  const auto disks = default_disks();
  const double p64 = rel(trace_of(64, disks), trace_of(64, {}));
  CHECK(p64 == doctest::Approx(kOraclePerturbation).epsilon(0.02));
  CHECK(p64 < 0.05);
}

TEST_CASE("boundary trace converges at least at first order") {
  const auto disks = default_disks();
  const auto oracle = trace_of(512, disks);
  double prev = 0.0;
  for (std::size_t n : {64u, 128u, 256u}) {
    const double err = rel(trace_of(n, disks), coarsen(oracle, 512 / n));
    MESSAGE("n = " << n << " trace error " << err);
    if (prev > 0.0) CHECK(prev / err >= 2.0);
    prev = err;
  }
}

TEST_CASE("kernel linearizes the forward map") {
  const Grid g = Grid::cube(2, 32, -0.5, 0.5);
  const Grid interior = Grid::cube(2, 16, -0.5, 0.5);
  const Phantom ph = build_phantom_disks(g, default_disks());
  const auto e = BoundaryElectrodes::square_boundary(g, CurrentPattern::left_right);
  ConductionOptions opt;
  opt.tol = 1e-13;
  const KernelMatrix k = kernel_bruteforce(ph, e, interior, 1e-3, opt);

  ScalarField f(interior);
  for (std::size_t c = 0; c < interior.size(); ++c) {
    const Vec3 x = interior.center(c);
    f[c] = std::sin(3 * x[0] + 1) * std::cos(2 * x[1]);
  }
  const auto predicted = k.apply(f);
  const auto h0 = solve_conduction(ph, e, opt).boundary_trace;
  auto defect = [&](double eps) {
    ScalarField ls = ph.field();
    const ScalarField up = upsample(f, g);
    for (std::size_t c = 0; c < g.size(); ++c) ls[c] += eps * up[c];
    const auto h = solve_conduction(phantom_from_field(ls), e, opt).boundary_trace;
    std::vector<double> dh(h.size());
    for (std::size_t j = 0; j < h.size(); ++j) dh[j] = (h[j] - h0[j]) / eps;
    return rel(dh, predicted);
  };
  const double d1 = defect(2e-2), d2 = defect(1e-2);
  MESSAGE("linearization defects " << d1 << " " << d2);
  CHECK(d1 < 0.05);
  CHECK(d1 / d2 == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("brute-force kernel converges in eps at first order") {
  const Grid g = Grid::cube(2, 16, -0.5, 0.5);
  const Grid interior = Grid::cube(2, 8, -0.5, 0.5);
  const Phantom ph = build_phantom_disks(g, {});
  const auto e = BoundaryElectrodes::square_boundary(g, CurrentPattern::left_right);
  ConductionOptions opt;
  opt.tol = 1e-13;
  const auto k1 = kernel_bruteforce(ph, e, interior, 4e-2, opt);
  const auto k2 = kernel_bruteforce(ph, e, interior, 2e-2, opt);
  const auto k4 = kernel_bruteforce(ph, e, interior, 1e-2, opt);
  const double a = relative_frobenius(k1, k2), b = relative_frobenius(k2, k4);
  CHECK(a / b == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("zero perturbation gives zero response") {
  const Grid g = Grid::cube(2, 16, -0.5, 0.5);
  const Grid interior = Grid::cube(2, 8, -0.5, 0.5);
  const auto k = kernel_adjoint(build_phantom_disks(g, default_disks()),
                                BoundaryElectrodes::square_boundary(g, CurrentPattern::left_right), interior);
  for (double v : k.apply(ScalarField(interior))) CHECK(v == 0.0);
}

TEST_CASE("kernel respects the reflection symmetry") {
  const Grid g = Grid::cube(2, 32, -0.5, 0.5);
  const Grid interior = Grid::cube(2, 16, -0.5, 0.5);
  // symmetric about y = 0, as are the left/right currents
  const std::vector<Disk> disks{{{-0.2, 0.0, 0.0}, 0.15, 0.05}, {{0.25, 0.0, 0.0}, 0.1, -0.05}};
  const auto e = BoundaryElectrodes::square_boundary(g, CurrentPattern::left_right);
  ConductionOptions opt;
  opt.tol = 1e-13;
  const auto k = kernel_bruteforce(build_phantom_disks(g, disks), e, interior, 1e-3, opt);
  const double scale = synfocus::testing::max_abs(k.values());
  double worst = 0.0;
  for (std::size_t j = 0; j < e.size(); ++j) {
    std::size_t jm = e.size();
    for (std::size_t q = 0; q < e.size(); ++q)
      if (std::abs(e.points()[q][0] - e.points()[j][0]) < 1e-12 &&
          std::abs(e.points()[q][1] + e.points()[j][1]) < 1e-12)
        jm = q;
    REQUIRE(jm < e.size());
    for (std::size_t c = 0; c < interior.size(); ++c) {
      const auto u = interior.unravel(c);
      const std::size_t cm = interior.index(u[0], interior.count(1) - 1 - u[1]);
      worst = std::max(worst, std::abs(k(j, c) - k(jm, cm)));
    }
  }
  CHECK(worst <= 1e-8 * scale);
}

TEST_CASE("adjoint kernel agrees with brute force") {
  const Grid g = Grid::cube(2, 32, -0.5, 0.5);
  const Grid interior = Grid::cube(2, 16, -0.5, 0.5);
  const auto e = BoundaryElectrodes::square_boundary(g, CurrentPattern::left_right);
  for (bool flat : {true, false}) {
    const Phantom ph = build_phantom_disks(g, flat ? std::vector<Disk>{} : default_disks());
    KernelStats sb, sa;
    const auto brute = kernel_bruteforce(ph, e, interior, 1e-3, {}, Exec::parallel, &sb);
    const auto adj = kernel_adjoint(ph, e, interior, {}, Exec::parallel, &sa);
    CHECK(relative_frobenius(adj, brute) <= 0.02);
    CHECK(sb.linear_solves == 1 + interior.size());
    CHECK(sa.linear_solves == 1 + e.size());
  }
}

TEST_CASE("zero-current electrodes give a zero kernel") {
  const Grid g = Grid::cube(2, 16, -0.5, 0.5);
  const Grid interior = Grid::cube(2, 8, -0.5, 0.5);
  const auto e = BoundaryElectrodes::square_boundary(g, CurrentPattern::none);
  const Phantom ph = build_phantom_disks(g, default_disks());
  CHECK(synfocus::testing::max_abs(kernel_adjoint(ph, e, interior).values()) == 0.0);
  CHECK(synfocus::testing::max_abs(kernel_bruteforce(ph, e, interior).values()) == 0.0);
}

TEST_CASE("kernel grids must nest") {
  const Grid g = Grid::cube(2, 30, -0.5, 0.5);
  const auto e = BoundaryElectrodes::square_boundary(g, CurrentPattern::left_right);
  const Phantom ph = build_phantom_disks(g, {});
  CHECK_THROWS_AS(kernel_adjoint(ph, e, Grid::cube(2, 16, -0.5, 0.5)), InvalidArgument);
  CHECK_THROWS_AS(kernel_adjoint(ph, e, Grid::cube(2, 15, -0.4, 0.5)), InvalidArgument);
  CHECK_THROWS_AS(kernel_bruteforce(ph, e, Grid::cube(2, 15, -0.5, 0.5), 0.0), InvalidArgument);
}

TEST_CASE("serial and parallel kernels are bit-identical") {
  const Grid g = Grid::cube(2, 32, -0.5, 0.5);
  const Grid interior = Grid::cube(2, 8, -0.5, 0.5);
  const Phantom ph = build_phantom_disks(g, default_disks());
  const auto e = BoundaryElectrodes::square_boundary(g, CurrentPattern::left_right);
  synfocus::testing::ThreadLimit threads(4);
  CHECK(bit_identical(kernel_bruteforce(ph, e, interior, 1e-3, {}, Exec::serial).values(),
                      kernel_bruteforce(ph, e, interior, 1e-3, {}, Exec::parallel).values()));
  CHECK(bit_identical(kernel_adjoint(ph, e, interior, {}, Exec::serial).values(),
                      kernel_adjoint(ph, e, interior, {}, Exec::parallel).values()));
}
