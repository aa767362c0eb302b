// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance runs. One line per criterion, nonzero exit if any fails.
// Extra arguments are test executables whose success makes up criterion 9.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "synfocus/electrodes.hpp"
#include "synfocus/error.hpp"
#include "synfocus/focusing.hpp"
#include "synfocus/forward_eit.hpp"
#include "synfocus/oracles.hpp"
#include "synfocus/pipeline.hpp"
#include "synfocus/transducers.hpp"
#include "synfocus/wavegen.hpp"

using namespace synfocus;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

// Electrodes that only label kernel rows.
BoundaryElectrodes labels(std::size_t n) {
  std::vector<Vec3> pts(n), normals(n, Vec3{1.0, 0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) pts[j] = {1.0 + static_cast<double>(j), 0.0, 0.0};
  return BoundaryElectrodes::from_parts(std::nullopt, pts, normals, std::vector<double>(n, 1.0),
                                        std::vector<double>(n, 0.0), std::vector<std::size_t>(n, 0));
}

// Gaussian phantom, unit aperture, Fibonacci transducers: the 3D setup.
const oracles::AnalyticPhantom kGauss{oracles::PhantomKind::gaussian, {0.0, 0.0, 0.0}, 0.2, 1.0, 3};
constexpr std::size_t kTransducers = 642;
constexpr std::size_t kRadii = 400;

SphericalMeanData oracle_pulse_data() {
  SphericalMeanData d{make_transducer_array(3, 1.0, kTransducers), uniform_radii(2.0, kRadii), 1, {}};
  d.values.resize(kTransducers * kRadii);
  const auto& z = d.array.positions();
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < kTransducers; ++i)
    for (std::size_t k = 0; k < kRadii; ++k)
      d.values[i * kRadii + k] = oracles::spherical_mean_quadrature(kGauss, z[i], d.radii[k], 1024);
  return d;
}

const Grid& out3() {
  static const Grid g = Grid::cube(3, 48, -0.5, 0.5);
  return g;
}

const ScalarField& pulse_reconstruction() {
  static const ScalarField f = invert_spherical_means_3d(oracle_pulse_data(), out3()).fields.at(0);
  return f;
}

}  // namespace

int main(int argc, char** argv) {
  criterion(1, "Fourier route exactness", [] {
    const Grid g = Grid::cube(2, 64, -0.5, 0.5);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-0.3, 0.3), w(0.05, 0.2);
    std::vector<ScalarField> rows;
    for (int j = 0; j < 20; ++j) {
      ScalarField f(g);
      for (int b = 0; b < 4; ++b) {
        const double cx = u(rng), cy = u(rng), s = w(rng), a = u(rng);
        for (std::size_t c = 0; c < g.size(); ++c) {
          const Vec3 x = g.center(c);
          f[c] += a * std::exp(-((x[0] - cx) * (x[0] - cx) + (x[1] - cy) * (x[1] - cy)) / (2 * s * s));
        }
      }
      rows.push_back(std::move(f));
    }
    const KernelMatrix k = KernelMatrix::from_rows(labels(20), rows);
    const auto t0 = std::chrono::steady_clock::now();
    const Reconstruction r = invert_fourier(measure_plane_waves(k), g);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double err = relative_frobenius(KernelMatrix::from_rows(labels(20), r.fields), k);
    return Outcome{err <= 1e-8 && secs < 5.0, fmt("rel_l2 = %.3g (limit 1e-8), roundtrip %.3f s (limit 5 s)", err, secs)};
  });

  criterion(2, "3D spherical-mean backprojection", [] {
    const double err = relative_l2(pulse_reconstruction().values(),
                                   oracles::sample_phantom(kGauss, out3()).values());
    return Outcome{err <= 0.10, fmt("rel_l2 vs analytic = %.4f (limit 0.10)", err)};
  });

  criterion(3, "monochromatic vs spherical-pulse route", [] {
    // Kernel grid inscribed in the aperture; frequencies up to its Nyquist.
    const Grid kg = Grid::cube(3, 24, -0.57, 0.57);
    const KernelMatrix k = KernelMatrix::from_rows(labels(1), std::vector{oracles::sample_phantom(kGauss, kg)});
    const auto array = make_transducer_array(3, 1.0, kTransducers);
    const auto data = measure_monochromatic(k, array, default_frequencies(kg.min_spacing(), 2.0));
    const auto radii = uniform_radii(2.0, kRadii);
    const ScalarField mono = invert_monochromatic_3d(data, out3(), radii).fields.at(0);
    const ScalarField truth = oracles::sample_phantom(kGauss, out3());
    const double mutual = relative_l2(mono.values(), pulse_reconstruction().values());
    const double e_mono = relative_l2(mono.values(), truth.values());
    const double e_pulse = relative_l2(pulse_reconstruction().values(), truth.values());
    return Outcome{mutual <= 0.10 && e_mono <= 0.15 && e_pulse <= 0.15,
                   fmt("mutual = %.4f (limit 0.10), monochromatic = %.4f, pulse = %.4f (limit 0.15)",
                       mutual, e_mono, e_pulse)};
  });

  criterion(4, "X-ray filtered backprojection", [] {
    const oracles::AnalyticPhantom disk{oracles::PhantomKind::ball, {0.08, -0.05, 0.0}, 0.3, 1.0, 2};
    const Grid g = Grid::cube(2, 256, -0.5, 0.5);
    Sinogram s{uniform_angles(360), covering_offsets(g, 256), 1, {}};
    for (double a : s.angles)
      for (double p : s.offsets) s.values.push_back(oracles::disk_sinogram(disk, a, p));
    const ScalarField rec = invert_xray_2d(s, g).fields.at(0);
    const ScalarField truth = oracles::sample_phantom(disk, g);
    std::vector<double> a, b;
    const double rim = 2.0 * g.min_spacing();
    for (std::size_t c = 0; c < g.size(); ++c) {
      const Vec3 x = g.center(c);
      if (std::abs(std::hypot(x[0] - disk.center[0], x[1] - disk.center[1]) - disk.scale) <= rim) continue;
      a.push_back(rec[c]);
      b.push_back(truth[c]);
    }
    const double err = relative_l2(a, b);
    return Outcome{err <= 0.10, fmt("rel_l2 off the rim = %.4f (limit 0.10)", err)};
  });

  criterion(5, "forward solver exactness", [] {
    const Grid g = Grid::cube(2, 64, -0.5, 0.5);
    const Phantom flat = build_phantom_disks(g, {});
    const auto e = BoundaryElectrodes::square_boundary(g, CurrentPattern::left_right);
    ConductionOptions opt;
    opt.tol = 1e-12;
    const auto sol = solve_conduction(flat, e, opt);
    ScalarField linear(g);
    double mean = 0.0;
    for (std::size_t c = 0; c < g.size(); ++c) mean += (linear[c] = -g.center(c)[0]);
    mean /= static_cast<double>(g.size());
    double pmean = 0.0;
    for (double v : sol.potential.values()) pmean += v;
    pmean /= static_cast<double>(g.size());
    std::vector<double> p(g.size()), l(g.size());
    for (std::size_t c = 0; c < g.size(); ++c) {
      p[c] = sol.potential[c] - pmean;
      l[c] = linear[c] - mean;
    }
    const double err = relative_l2(p, l);
    return Outcome{err <= 1e-6 && sol.flux_imbalance <= 1e-10,
                   fmt("potential rel_l2 = %.3g (limit 1e-6), flux imbalance = %.3g (limit 1e-10)", err,
                       sol.flux_imbalance)};
  });

  criterion(6, "adjoint vs brute-force kernel", [] {
    const Grid g = Grid::cube(2, 64, -0.5, 0.5);
    const Grid interior = Grid::cube(2, 16, -0.5, 0.5);
    const Phantom ph = build_phantom_disks(g, default_disks());
    const auto e = BoundaryElectrodes::square_boundary(g, CurrentPattern::left_right);
    const double err = relative_frobenius(kernel_adjoint(ph, e, interior), kernel_bruteforce(ph, e, interior));
    return Outcome{err <= 0.02, fmt("rel_frobenius = %.4g (limit 0.02)", err)};
  });

  const auto tmp = std::filesystem::temp_directory_path() / "synfocus_acceptance";
  double plane_noisy = NAN;
  criterion(7, "end-to-end plane-wave focusing", [&] {
    ExperimentConfig cfg;
    cfg.grid = 64;
    cfg.interior = 32;
    cfg.family = WaveFamily::plane;
    cfg.noise = 0.01;
    cfg.output_dir = (tmp / "plane").string();
    const Metrics m = run_endtoend(cfg);
    plane_noisy = std::stod(m.get("kernel_error"));
    // Scaled smoke run of the spherical-pulse configuration.
    cfg.family = WaveFamily::pulse;
    cfg.transducers = 300;
    cfg.radii = 800;
    cfg.output_dir = (tmp / "pulse").string();
    const Metrics p = run_endtoend(cfg);
    return Outcome{plane_noisy <= 0.05,
                   fmt("kernel rel_frobenius = %.4f at 1%% noise (limit 0.05); pulse 300x800 smoke: "
                       "kernel %.4f, data residual %.4f",
                       plane_noisy, std::stod(p.get("kernel_error")), std::stod(p.get("data_residual")))};
  });

  criterion(8, "noise transfer", [&] {
    if (std::isnan(plane_noisy)) return Outcome{false, "end-to-end run did not complete"};
    return Outcome{plane_noisy >= 0.008 && plane_noisy <= 0.012,
                   fmt("kernel error %.3f%% for 1%% data noise (range [0.8, 1.2]%%)", 100 * plane_noisy)};
  });

  criterion(9, "invariant suite", [&] {
    int failed = 0;
    std::string names;
    for (int a = 1; a < argc; ++a) {
      const std::string cmd = std::string(argv[a]) + " > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) {
        ++failed;
        names += std::string(" ") + std::filesystem::path(argv[a]).filename().string();
      }
    }
    if (argc < 2) return Outcome{false, "no test executables given"};
    return Outcome{failed == 0, std::to_string(argc - 1 - failed) + "/" + std::to_string(argc - 1) +
                                    " suites green" + (failed ? ", failing:" + names : "")};
  });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
