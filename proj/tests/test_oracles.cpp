// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "synfocus/error.hpp"
#include "synfocus/oracles.hpp"

using namespace synfocus;
using namespace synfocus::oracles;
using std::numbers::pi;

namespace {

// Closed forms used only to cross-check the quadrature.

// Sphere |x - z| = t, Gaussian at the origin, d = |z|.
double gaussian_shell_3d(double amp, double s, double d, double t) {
  return amp * 2 * pi * t * s * s / d *
         (std::exp(-(d - t) * (d - t) / (2 * s * s)) - std::exp(-(d + t) * (d + t) / (2 * s * s)));
}

// Circle |x - z| = t in 2D.
double gaussian_circle_2d(double amp, double s, double d, double t) {
  const double k = d * t / (s * s);
  // I0(k) e^{-k} stays finite for large k
  return amp * 2 * pi * t * std::exp(-(d - t) * (d - t) / (2 * s * s)) * std::cyl_bessel_i(0.0, k) *
         std::exp(-k);
}

// Area of the part of the sphere |x - z| = t inside the ball |x| <= rho.
double ball_cap_3d(double rho, double d, double t) {
  if (d + t <= rho) return 4 * pi * t * t;
  if (t >= d + rho || d >= t + rho) return 0.0;
  const double u = (d * d + t * t - rho * rho) / (2 * d * t);
  return 2 * pi * t * t * (1 - u);
}

}  // namespace

TEST_CASE("phantom evaluation conventions") {
  const AnalyticPhantom ball{PhantomKind::ball, {0.25, 0.5, 0.0}, 0.375, 2.0, 3};
  CHECK(eval_phantom(ball, {0.25, 0.5, 0.0}) == 2.0);
  CHECK(eval_phantom(ball, {0.625, 0.5, 0.0}) == 2.0);  // closed ball
  CHECK(eval_phantom(ball, {0.25, 0.5, -0.375}) == 2.0);
  CHECK(eval_phantom(ball, {0.626, 0.5, 0.0}) == 0.0);
  const AnalyticPhantom g{PhantomKind::gaussian, {0.0, 0.0, 0.0}, 0.2, 1.5, 3};
  CHECK(eval_phantom(g, {0.0, 0.2, 0.0}) == doctest::Approx(1.5 * std::exp(-0.5)).epsilon(1e-15));
  const Grid grid = Grid::cube(3, 4, -1.0, 1.0);
  const ScalarField f = sample_phantom(g, grid);
  CHECK(f[grid.index(1, 2, 3)] == eval_phantom(g, grid.center(1, 2, 3)));
}

TEST_CASE("spherical means of trivial phantoms") {
  const AnalyticPhantom huge{PhantomKind::ball, {0.0, 0.0, 0.0}, 100.0, 0.7, 3};
  CHECK(spherical_mean_quadrature(huge, {2.0, 0.0, 0.0}, 1.3, 256) ==
        doctest::Approx(0.7 * 4 * pi * 1.3 * 1.3).epsilon(1e-12));
  const AnalyticPhantom huge2{PhantomKind::ball, {0.0, 0.0, 0.0}, 100.0, 0.7, 2};
  CHECK(spherical_mean_quadrature(huge2, {2.0, 0.0, 0.0}, 1.3, 256) ==
        doctest::Approx(0.7 * 2 * pi * 1.3).epsilon(1e-12));
  const AnalyticPhantom small{PhantomKind::ball, {0.0, 0.0, 0.0}, 0.3, 1.0, 3};
  CHECK(spherical_mean_quadrature(small, {2.0, 0.0, 0.0}, 1.5, 256) == 0.0);
  CHECK(spherical_mean_quadrature(small, {2.0, 0.0, 0.0}, 2.5, 256) == 0.0);
  CHECK(spherical_mean_quadrature(small, {0.0, 0.0, 0.0}, 0.5, 256) == 0.0);
}

TEST_CASE("gaussian fixture value") {
  // z = (2, 0, 0), t = 2, s = 0.2: self-converged value, frozen
  constexpr double kFixture = 0.25132741228718347;
  const AnalyticPhantom g{PhantomKind::gaussian, {0.0, 0.0, 0.0}, 0.2, 1.0, 3};
  const double a = spherical_mean_quadrature(g, {2.0, 0.0, 0.0}, 2.0, 1024);
  const double b = spherical_mean_quadrature(g, {2.0, 0.0, 0.0}, 2.0, 2048);
  CHECK(std::abs(a - b) <= 1e-6 * std::abs(b));
  CHECK(b == doctest::Approx(kFixture).epsilon(1e-10));
  CHECK(b == doctest::Approx(gaussian_shell_3d(1.0, 0.2, 2.0, 2.0)).epsilon(1e-10));
}

TEST_CASE("quadrature matches closed forms") {
  const AnalyticPhantom g3{PhantomKind::gaussian, {0.1, -0.2, 0.05}, 0.2, 1.3, 3};
  const AnalyticPhantom g2{PhantomKind::gaussian, {0.1, -0.2, 0.0}, 0.2, 1.3, 2};
  const AnalyticPhantom b3{PhantomKind::ball, {0.1, -0.2, 0.05}, 0.3, 1.0, 3};
  const std::vector<Vec3> zs{{2.0, 0.0, 0.0}, {0.0, 0.0, -1.0}, {0.6, 0.8, 0.0}};
  for (Vec3 z : zs) {
    const double d3 = norm(z - g3.center);
    const double d2 = std::hypot(z[0] - g2.center[0], z[1] - g2.center[1]);
    for (double t : {0.3, 0.9, 1.2, 1.8, 2.1}) {
      CAPTURE(t);
      const double ref3 = gaussian_shell_3d(1.3, 0.2, d3, t);
      CHECK(std::abs(spherical_mean_quadrature(g3, z, t, 2048) - ref3) <= 1e-9 * std::max(ref3, 1e-12) + 1e-14);
      const double ref2 = gaussian_circle_2d(1.3, 0.2, d2, t);
      // the 2D rule ignores the third coordinate
      CHECK(std::abs(spherical_mean_quadrature(g2, {z[0], z[1], 0.7}, t, 512) - ref2) <= 1e-9 * std::max(ref2, 1e-12) + 1e-14);
      const double refb = ball_cap_3d(0.3, d3, t);
      CHECK(std::abs(spherical_mean_quadrature(b3, z, t, 2048) - refb) <= 1e-9 * (refb + 1.0));
    }
  }
}

TEST_CASE("every oracle is self-convergent") {
  const std::vector<AnalyticPhantom> ps{
      {PhantomKind::gaussian, {0.0, 0.0, 0.0}, 0.2, 1.0, 3},
      {PhantomKind::gaussian, {0.2, 0.1, 0.0}, 0.15, 1.0, 3},
      {PhantomKind::ball, {0.2, 0.0, 0.0}, 0.3, 1.0, 3},
      {PhantomKind::gaussian, {0.0, 0.1, 0.0}, 0.2, 1.0, 2},
      {PhantomKind::ball, {0.1, 0.0, 0.0}, 0.3, 1.0, 2},
  };
  const std::vector<Vec3> zs{{1.0, 0.0, 0.0}, {0.0, -1.0, 0.0}, {0.6, 0.0, 0.8}};
  for (const auto& p : ps)
    for (Vec3 z : zs) {
      if (p.dim == 2) z[2] = 0.0;
      if (p.dim == 2 && norm(z) < 0.5) continue;
      for (double t : {0.5, 0.8, 1.0, 1.25, 1.6}) {
        const double a = spherical_mean_quadrature(p, z, t, 1024);
        const double b = spherical_mean_quadrature(p, z, t, 2048);
        CHECK(std::abs(a - b) <= 1e-6 * std::max(std::abs(b), 1e-6));
      }
    }
}

TEST_CASE("oracle values are deterministic") {
  const AnalyticPhantom g{PhantomKind::gaussian, {0.1, 0.0, 0.0}, 0.2, 1.0, 3};
  const double a = spherical_mean_quadrature(g, {0.0, 1.0, 0.0}, 1.1, 777);
  const double b = spherical_mean_quadrature(g, {0.0, 1.0, 0.0}, 1.1, 777);
  CHECK(std::memcmp(&a, &b, sizeof a) == 0);
}

TEST_CASE("oracle preconditions") {
  const AnalyticPhantom g{PhantomKind::gaussian, {0.0, 0.0, 0.0}, 0.2, 1.0, 3};
  CHECK_THROWS_AS(spherical_mean_quadrature(g, {1.0, 0.0, 0.0}, 0.0, 256), InvalidArgument);
  CHECK_THROWS_AS(spherical_mean_quadrature(g, {1.0, 0.0, 0.0}, 1.0, 32), InvalidArgument);
  CHECK_THROWS_AS(disk_sinogram(g, 0.0, 0.0), InvalidArgument);
}

TEST_CASE("chord-length sinogram") {
  const AnalyticPhantom disk{PhantomKind::ball, {0.1, -0.05, 0.0}, 0.3, 2.0, 2};
  // line through the center at angle a has offset c . theta
  for (double a : {0.0, 0.4, 1.3, 2.9}) {
    const double c = disk.center[0] * std::cos(a) + disk.center[1] * std::sin(a);
    CHECK(disk_sinogram(disk, a, c) == doctest::Approx(2 * 0.3 * 2.0));
    CHECK(disk_sinogram(disk, a, c + 0.3) == 0.0);
    CHECK(disk_sinogram(disk, a, c - 0.18) == doctest::Approx(2.0 * 2 * std::sqrt(0.09 - 0.0324)));
  }
  const AnalyticPhantom g{PhantomKind::gaussian, {0.0, 0.0, 0.0}, 0.2, 1.0, 2};
  CHECK(disk_sinogram(g, 0.7, 0.0) == doctest::Approx(0.2 * std::sqrt(2 * pi)));
  CHECK(disk_sinogram(g, 0.7, 0.2) == doctest::Approx(0.2 * std::sqrt(2 * pi) * std::exp(-0.5)));
}

TEST_CASE("fixture dump") {
  const AnalyticPhantom g{PhantomKind::gaussian, {0.0, 0.0, 0.0}, 0.2, 1.0, 3};
  std::vector<FixtureRow> rows;
  for (double t : {1.8, 2.0, 2.2}) rows.push_back({{2.0, 0.0, 0.0}, t, spherical_mean_quadrature(g, {2.0, 0.0, 0.0}, t, 1024)});
  std::ostringstream os;
  write_fixture_csv(os, g, rows);
  const std::string text = os.str();
  CHECK(text.rfind("#", 0) == 0);
  CHECK(text.find("gaussian") != std::string::npos);
  CHECK(text.find("2,0,0,2,0.25132741228") != std::string::npos);
}
