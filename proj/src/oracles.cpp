// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "synfocus/oracles.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <ostream>

#include "synfocus/error.hpp"

namespace synfocus::oracles {

namespace {

constexpr double kPi = std::numbers::pi;

struct GaussRule {
  std::vector<double> nodes, weights;
};

// Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
const GaussRule& gauss_legendre(std::size_t n) {
  thread_local std::map<std::size_t, GaussRule> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule rule{std::vector<double>(n), std::vector<double>(n)};
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      dp = nd * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

// Integrates fn over [a, b] with an n-point Gauss-Legendre rule.
template <class Fn>
double integrate(double a, double b, std::size_t n, Fn&& fn) {
  const GaussRule& r = gauss_legendre(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += r.weights[i] * fn(mid + half * r.nodes[i]);
  return s * half;
}

// Orthonormal frame whose third axis points from z to the phantom center.
void frame(const AnalyticPhantom& p, const Vec3& z, Vec3& e1, Vec3& e2, Vec3& e3, double& d) {
  Vec3 v = p.center - z;
  if (p.dim == 2) v[2] = 0.0;
  d = norm(v);
  e3 = d > 0.0 ? (1.0 / d) * v : Vec3{0.0, 0.0, 1.0};
  if (p.dim == 2) {
    e3[2] = 0.0;
    if (d == 0.0) e3 = {1.0, 0.0, 0.0};
    e1 = {-e3[1], e3[0], 0.0};
    e2 = {0.0, 0.0, 0.0};
    return;
  }
  const Vec3 helper = std::abs(e3[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  // e1 = normalize(helper - (helper.e3) e3), e2 = e3 x e1.
  const double hd = dot(helper, e3);
  e1 = helper - hd * e3;
  e1 = (1.0 / norm(e1)) * e1;
  e2 = {e3[1] * e1[2] - e3[2] * e1[1], e3[2] * e1[0] - e3[0] * e1[2],
        e3[0] * e1[1] - e3[1] * e1[0]};
}

}  // namespace

double eval_phantom(const AnalyticPhantom& p, const Vec3& x) {
  Vec3 dx = x - p.center;
  if (p.dim == 2) dx[2] = 0.0;
  const double r2 = dot(dx, dx);
  switch (p.kind) {
    case PhantomKind::gaussian:
      return p.amplitude * std::exp(-r2 / (2.0 * p.scale * p.scale));
    case PhantomKind::ball:
      return r2 <= p.scale * p.scale ? p.amplitude : 0.0;
  }
  return 0.0;
}

ScalarField sample_phantom(const AnalyticPhantom& p, const Grid& grid) {
  ScalarField f(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) f[i] = eval_phantom(p, grid.center(i));
  return f;
}

double spherical_mean_quadrature(const AnalyticPhantom& p, const Vec3& z, double t,
                                 std::size_t n_quad) {
  if (!(t > 0.0)) throw InvalidArgument("spherical_mean_quadrature: t must be positive");
  if (n_quad < 64) throw InvalidArgument("spherical_mean_quadrature: n_quad must be >= 64");
  if (!(p.scale > 0.0)) throw InvalidArgument("spherical_mean_quadrature: scale must be positive");
  Vec3 e1, e2, e3;
  double d;
  frame(p, z, e1, e2, e3, d);

  // Cosine of the angle (from e3) where the sphere crosses the ball boundary.
  double u_cut = 2.0;
  if (p.kind == PhantomKind::ball && d > 0.0)
    u_cut = (t * t + d * d - p.scale * p.scale) / (2.0 * t * d);
  const bool split = u_cut > -1.0 && u_cut < 1.0;

  if (p.dim == 2) {
    auto on_circle = [&](double psi) {
      return eval_phantom(p, z + t * (std::cos(psi) * e3 + Vec3{std::sin(psi) * e1[0],
                                                               std::sin(psi) * e1[1], 0.0}));
    };
    if (split) {
      const double psi = std::acos(u_cut);
      const std::size_t half = n_quad / 2;
      return t * (integrate(-psi, psi, half, on_circle) +
                  integrate(psi, 2.0 * kPi - psi, half, on_circle));
    }
    double s = 0.0;
    for (std::size_t m = 0; m < n_quad; ++m)
      s += on_circle(2.0 * kPi * static_cast<double>(m) / static_cast<double>(n_quad));
    return t * s * 2.0 * kPi / static_cast<double>(n_quad);
  }

  // The azimuth is cheap: both phantom kinds are symmetric about e3, so a
  // short uniform rule is already exact; the budget goes to the polar angle.
  const std::size_t n_phi = 8;
  const std::size_t n_u = n_quad / n_phi;
  std::vector<double> cphi(n_phi), sphi(n_phi);
  for (std::size_t m = 0; m < n_phi; ++m) {
    cphi[m] = std::cos(2.0 * kPi * static_cast<double>(m) / static_cast<double>(n_phi));
    sphi[m] = std::sin(2.0 * kPi * static_cast<double>(m) / static_cast<double>(n_phi));
  }
  auto ring = [&](double u) {
    const double r = std::sqrt(std::max(0.0, 1.0 - u * u));
    double s = 0.0;
    for (std::size_t m = 0; m < n_phi; ++m) {
      const Vec3 dir = u * e3 + (r * cphi[m]) * e1 + (r * sphi[m]) * e2;
      s += eval_phantom(p, z + t * dir);
    }
    return s * 2.0 * kPi / static_cast<double>(n_phi);
  };
  // Panel breaks in u = cos(angle from e3).
  std::vector<double> breaks{-1.0};
  if (split) breaks.push_back(u_cut);
  if (p.kind == PhantomKind::gaussian && d > 0.0) {
    // The integrand behaves like exp(-alpha (1 - u)); grade panels toward u = 1.
    const double alpha = d * t / (p.scale * p.scale);
    for (double c = 64.0; c >= 0.5; c *= 0.5)
      if (1.0 - c / alpha > -1.0) breaks.push_back(1.0 - c / alpha);
  }
  breaks.push_back(1.0);
  const std::size_t per = std::max<std::size_t>(n_u / (breaks.size() - 1), 2);
  double integral = 0.0;
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b)
    integral += integrate(breaks[b], breaks[b + 1], per, ring);
  return t * t * integral;
}

double disk_sinogram(const AnalyticPhantom& p, double angle, double offset) {
  if (p.dim != 2) throw InvalidArgument("disk_sinogram: 2D phantoms only");
  const double d = offset - (p.center[0] * std::cos(angle) + p.center[1] * std::sin(angle));
  switch (p.kind) {
    case PhantomKind::ball:
      return std::abs(d) >= p.scale ? 0.0
                                    : p.amplitude * 2.0 * std::sqrt(p.scale * p.scale - d * d);
    case PhantomKind::gaussian:
      return p.amplitude * p.scale * std::sqrt(2.0 * kPi) *
             std::exp(-d * d / (2.0 * p.scale * p.scale));
  }
  return 0.0;
}

void write_fixture_csv(std::ostream& os, const AnalyticPhantom& p, std::span<const FixtureRow> rows) {
  char buf[320];
  std::snprintf(buf, sizeof buf, "# phantom: kind=%s dim=%d center=%.17g,%.17g,%.17g scale=%.17g amplitude=%.17g\n",
                p.kind == PhantomKind::gaussian ? "gaussian" : "ball", p.dim, p.center[0],
                p.center[1], p.center[2], p.scale, p.amplitude);
  os << buf << "# columns: z_x,z_y,z_z,t,value\n";
  for (const FixtureRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.z[0], r.z[1], r.z[2], r.t,
                  r.value);
    os << buf;
  }
}

}  // namespace synfocus::oracles
