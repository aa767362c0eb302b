// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "synfocus/wavegen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "fft.hpp"
#include "interp.hpp"
#include "synfocus/error.hpp"

namespace synfocus {

namespace {

constexpr double kPi = std::numbers::pi;

// Distance from z to the nearest / farthest point of the grid box.
std::pair<double, double> box_distance_range(const Grid& g, const Vec3& z) {
  const Vec3 lo = g.lower(), hi = g.upper();
  double near2 = 0.0, far2 = 0.0;
  for (int a = 0; a < g.dim(); ++a) {
    const double dn = z[a] < lo[a] ? lo[a] - z[a] : (z[a] > hi[a] ? z[a] - hi[a] : 0.0);
    const double df = std::max(std::abs(z[a] - lo[a]), std::abs(z[a] - hi[a]));
    near2 += dn * dn;
    far2 += df * df;
  }
  return {std::sqrt(near2), std::sqrt(far2)};
}

void check_dims(const KernelMatrix& kernel, const TransducerArray& array) {
  if (kernel.interior().dim() != array.dim())
    throw InvalidArgument("wavegen: kernel and transducer array dimensions differ");
}

// Splats the circle/sphere |x - z| = t into f with uniform angular sampling.
void splat_sphere(const Grid& g, const Vec3& z, double t, std::size_t oversample,
                  detail::SparseFunctional& f) {
  const double dx = g.min_spacing();
  const double os = static_cast<double>(oversample);
  if (g.dim() == 2) {
    const std::size_t n = static_cast<std::size_t>(std::ceil(2.0 * kPi * t / dx) * os);
    const double w = 2.0 * kPi * t / static_cast<double>(n);
    for (std::size_t m = 0; m < n; ++m) {
      const double a = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(n);
      detail::splat(g, {z[0] + t * std::cos(a), z[1] + t * std::sin(a), 0.0}, w, f);
    }
    return;
  }
  const std::size_t n_theta = static_cast<std::size_t>(std::ceil(kPi * t / dx) * os);
  const std::size_t n_phi = static_cast<std::size_t>(std::ceil(2.0 * kPi * t / dx) * os);
  const double d_theta = kPi / static_cast<double>(n_theta);
  const double d_phi = 2.0 * kPi / static_cast<double>(n_phi);
  std::vector<double> cphi(n_phi), sphi(n_phi);
  for (std::size_t m = 0; m < n_phi; ++m) {
    cphi[m] = std::cos(d_phi * static_cast<double>(m));
    sphi[m] = std::sin(d_phi * static_cast<double>(m));
  }
  for (std::size_t b = 0; b < n_theta; ++b) {
    const double lo = d_theta * static_cast<double>(b), hi = lo + d_theta;
    const double th = lo + 0.5 * d_theta;
    // Exact area of the polar band, shared equally by its samples.
    const double w = t * t * (std::cos(lo) - std::cos(hi)) * d_phi;
    const double st = std::sin(th), ct = std::cos(th);
    for (std::size_t m = 0; m < n_phi; ++m) {
      detail::splat(g, {z[0] + t * st * cphi[m], z[1] + t * st * sphi[m], z[2] + t * ct}, w, f);
    }
  }
}

double rms(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return v.empty() ? 0.0 : std::sqrt(s / static_cast<double>(v.size()));
}

double rms(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& x : v) s += std::norm(x);
  return v.empty() ? 0.0 : std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

SphericalMeanData measure_spherical_pulse(const KernelMatrix& kernel, const TransducerArray& array,
                                          std::span<const double> radii, std::size_t oversample,
                                          Exec exec) {
  check_dims(kernel, array);
  for (double t : radii)
    if (!(t > 0.0)) throw InvalidArgument("measure_spherical_pulse: radii must be positive");
  if (oversample < 1) throw InvalidArgument("measure_spherical_pulse: oversample must be >= 1");
  const Grid& g = kernel.interior();
  const std::size_t n_e = kernel.rows(), n_t = radii.size(), n_z = array.size();
  const auto rows_t = detail::transpose_rows(kernel.values(), n_e, kernel.cols());

  SphericalMeanData data{array, std::vector<double>(radii.begin(), radii.end()), n_e,
                         std::vector<double>(n_z * n_t * n_e, 0.0)};
#pragma omp parallel if (exec == Exec::parallel)
  {
    detail::SparseFunctional f(g.size());
#pragma omp for schedule(dynamic)
    for (std::size_t task = 0; task < n_z * n_t; ++task) {
      const std::size_t i = task / n_t, k = task % n_t;
      const Vec3& z = array.positions()[i];
      const auto [near, far] = box_distance_range(g, z);
      const double t = radii[k];
      if (t < near || t > far) continue;
      splat_sphere(g, z, t, oversample, f);
      f.apply(rows_t, std::span<double>(data.values.data() + task * n_e, n_e));
      f.clear();
    }
  }
  return data;
}

MonochromaticData measure_monochromatic(const KernelMatrix& kernel, const TransducerArray& array,
                                        std::span<const double> frequencies, Exec exec) {
  check_dims(kernel, array);
  const Grid& g = kernel.interior();
  for (const Vec3& z : array.positions())
    if (g.contains(z))
      throw InvalidArgument(
          "measure_monochromatic: singular kernel, transducer inside the interior grid box");
  for (double l : frequencies)
    if (!(l > 0.0)) throw InvalidArgument("measure_monochromatic: frequencies must be positive");
  const std::size_t n_e = kernel.rows(), n_f = frequencies.size(), n_z = array.size();
  const std::size_t n_p = kernel.cols();
  const auto rows_t = detail::transpose_rows(kernel.values(), n_e, n_p);
  std::vector<bool> empty(n_p, true);
  for (std::size_t p = 0; p < n_p; ++p)
    for (std::size_t j = 0; j < n_e; ++j)
      if (rows_t[p * n_e + j] != 0.0) empty[p] = false;

  // Uniform lattices use the phasor recurrence exp(i l_{m+1} r) = exp(i l_m r) exp(i dl r).
  bool uniform = n_f >= 2;
  const double dl = n_f >= 2 ? frequencies[1] - frequencies[0] : 0.0;
  for (std::size_t m = 1; m < n_f && uniform; ++m)
    uniform = std::abs(frequencies[m] - frequencies[m - 1] - dl) <= 1e-12 * frequencies.back();

  const double area = g.cell_measure();
  MonochromaticData data{array, std::vector<double>(frequencies.begin(), frequencies.end()), n_e,
                         std::vector<Complex>(n_z * n_f * n_e)};
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (std::size_t i = 0; i < n_z; ++i) {
    const Vec3& z = array.positions()[i];
    Complex* out = data.values.data() + i * n_f * n_e;
    for (std::size_t p = 0; p < n_p; ++p) {
      if (empty[p]) continue;
      const double r = norm(g.center(p) - z);
      const double amp = area / (4.0 * kPi * r);
      const double* kp = rows_t.data() + p * n_e;
      Complex phase = std::polar(amp, frequencies.empty() ? 0.0 : frequencies[0] * r);
      const Complex step = uniform ? std::polar(1.0, dl * r) : Complex(1.0);
      for (std::size_t m = 0; m < n_f; ++m) {
        if (!uniform) phase = std::polar(amp, frequencies[m] * r);
        Complex* o = out + m * n_e;
        for (std::size_t j = 0; j < n_e; ++j) o[j] += kp[j] * phase;
        if (uniform) phase *= step;
      }
    }
  }
  return data;
}

FourierData measure_plane_waves(const KernelMatrix& kernel) {
  const Grid& g = kernel.interior();
  const int dim = g.dim();
  Vec3 dk{1.0, 1.0, 1.0}, k0{};
  for (int a = 0; a < dim; ++a) {
    const auto n = static_cast<double>(g.count(a));
    dk[a] = 2.0 * kPi / (n * g.spacing()[a]);
    k0[a] = -std::floor(n / 2.0) * dk[a];
  }
  const Grid kgrid(dim, k0, dk, g.counts());
  const std::size_t n_e = kernel.rows(), n_k = g.size();
  FourierData data{kgrid, g.origin(), n_e, std::vector<Complex>(n_k * n_e)};

  // Centered lattice index <-> FFT index, and the phase exp(i k.x0).
  std::vector<std::size_t> fft_index(n_k);
  std::vector<Complex> phase(n_k);
  for (std::size_t q = 0; q < n_k; ++q) {
    const auto c = kgrid.unravel(q);
    std::size_t f[3] = {0, 0, 0};
    for (int a = 0; a < dim; ++a) {
      const long n = static_cast<long>(g.count(a));
      const long m = static_cast<long>(c[a]) - n / 2;
      f[a] = static_cast<std::size_t>(((m % n) + n) % n);
    }
    fft_index[q] = g.index(f[0], f[1], f[2]);
    phase[q] = std::polar(g.cell_measure(), dot(kgrid.center(q), g.origin()));
  }
  std::vector<Complex> buf(n_k);
  for (std::size_t j = 0; j < n_e; ++j) {
    const auto row = kernel.row(j);
    for (std::size_t p = 0; p < n_k; ++p) buf[p] = row[p];
    detail::dft(buf, g.counts(), +1);
    for (std::size_t q = 0; q < n_k; ++q) data.values[q * n_e + j] = phase[q] * buf[fft_index[q]];
  }
  return data;
}

Sinogram measure_line_integrals(const KernelMatrix& kernel, std::span<const double> angles,
                                std::span<const double> offsets, Exec exec) {
  const Grid& g = kernel.interior();
  if (g.dim() != 2) throw InvalidArgument("measure_line_integrals: unsupported dimension (2D only)");
  const std::size_t n_e = kernel.rows(), n_a = angles.size(), n_s = offsets.size();
  const auto rows_t = detail::transpose_rows(kernel.values(), n_e, kernel.cols());
  const Vec3 c0 = 0.5 * (g.lower() + g.upper());
  const double rc = 0.5 * g.diameter();
  const double step = 0.5 * g.min_spacing();
  const std::size_t n_tau = static_cast<std::size_t>(std::ceil(2.0 * rc / step));

  Sinogram sino{std::vector<double>(angles.begin(), angles.end()),
                std::vector<double>(offsets.begin(), offsets.end()), n_e,
                std::vector<double>(n_a * n_s * n_e, 0.0)};
#pragma omp parallel if (exec == Exec::parallel)
  {
    detail::SparseFunctional f(g.size());
#pragma omp for schedule(dynamic)
    for (std::size_t task = 0; task < n_a * n_s; ++task) {
      const double a = angles[task / n_s], s = offsets[task % n_s];
      const Vec3 th{std::cos(a), std::sin(a), 0.0}, perp{-std::sin(a), std::cos(a), 0.0};
      const double tau_c = dot(c0, perp);
      const double tau0 = tau_c - 0.5 * static_cast<double>(n_tau) * step;
      for (std::size_t m = 0; m < n_tau; ++m) {
        const double tau = tau0 + (static_cast<double>(m) + 0.5) * step;
        detail::splat(g, s * th + tau * perp, step, f);
      }
      f.apply(rows_t, std::span<double>(sino.values.data() + task * n_e, n_e));
      f.clear();
    }
  }
  return sino;
}

SphericalMeanData add_noise(const SphericalMeanData& data, double level, std::uint64_t seed) {
  if (!(level >= 0.0)) throw InvalidArgument("add_noise: level must be >= 0");
  SphericalMeanData out = data;
  if (level == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, level * rms(data.values));
  for (double& v : out.values) v += normal(rng);
  return out;
}

Sinogram add_noise(const Sinogram& data, double level, std::uint64_t seed) {
  if (!(level >= 0.0)) throw InvalidArgument("add_noise: level must be >= 0");
  Sinogram out = data;
  if (level == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, level * rms(data.values));
  for (double& v : out.values) v += normal(rng);
  return out;
}

MonochromaticData add_noise(const MonochromaticData& data, double level, std::uint64_t seed) {
  if (!(level >= 0.0)) throw InvalidArgument("add_noise: level must be >= 0");
  MonochromaticData out = data;
  if (level == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, level * rms(data.values) / std::sqrt(2.0));
  for (Complex& v : out.values) {
    const double re = normal(rng);
    const double im = normal(rng);
    v += Complex(re, im);
  }
  return out;
}

FourierData add_noise(const FourierData& data, double level, std::uint64_t seed) {
  if (!(level >= 0.0)) throw InvalidArgument("add_noise: level must be >= 0");
  FourierData out = data;
  if (level == 0.0) return out;
  const Grid& kg = data.kgrid;
  const int dim = kg.dim();
  const double sigma = level * rms(data.values);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  // Pair every lattice point with its DFT mirror -q mod N and draw one
  // complex sample per pair; self-mirrored points get a real sample.
  auto signed_index = [&](std::size_t q) {
    const auto c = kg.unravel(q);
    std::array<long, 3> m{0, 0, 0};
    for (int a = 0; a < dim; ++a) m[a] = static_cast<long>(c[a]) - static_cast<long>(kg.count(a)) / 2;
    return m;
  };
  auto mirror = [&](std::size_t q) {
    const auto m = signed_index(q);
    std::size_t c[3] = {0, 0, 0};
    for (int a = 0; a < dim; ++a) {
      const long n = static_cast<long>(kg.count(a));
      const long fm = ((-m[a]) % n + n) % n;  // FFT index of -m
      // Back to centered storage index.
      long centered = fm >= (n + 1) / 2 ? fm - n : fm;
      c[a] = static_cast<std::size_t>(centered + n / 2);
    }
    return kg.index(c[0], c[1], c[2]);
  };
  const std::size_t n_e = data.n_electrodes;
  for (std::size_t q = 0; q < kg.size(); ++q) {
    const std::size_t r = mirror(q);
    if (r < q) continue;
    const Complex ph_q = std::polar(1.0, dot(kg.center(q), data.x_origin));
    const Complex ph_r = std::polar(1.0, dot(kg.center(r), data.x_origin));
    for (std::size_t j = 0; j < n_e; ++j) {
      if (r == q) {
        out.values[q * n_e + j] += ph_q * (sigma * normal(rng));
      } else {
        const double re = normal(rng), im = normal(rng);
        const Complex w = (sigma / std::sqrt(2.0)) * Complex(re, im);
        out.values[q * n_e + j] += ph_q * w;
        out.values[r * n_e + j] += ph_r * std::conj(w);
      }
    }
  }
  return out;
}

WaveData add_noise(const WaveData& data, double level, std::uint64_t seed) {
  return std::visit([&](const auto& d) -> WaveData { return add_noise(d, level, seed); }, data);
}

std::vector<double> uniform_radii(double t_max, std::size_t count) {
  if (!(t_max > 0.0) || count == 0) throw InvalidArgument("uniform_radii: bad range");
  std::vector<double> t(count);
  for (std::size_t k = 0; k < count; ++k)
    t[k] = t_max * static_cast<double>(k + 1) / static_cast<double>(count);
  return t;
}

std::vector<double> default_frequencies(double dx, double diameter) {
  if (!(dx > 0.0) || !(diameter > 0.0)) throw InvalidArgument("default_frequencies: bad geometry");
  const double dl = kPi / (2.0 * diameter);
  const auto count = static_cast<std::size_t>(std::floor((kPi / dx) / dl + 1e-9));
  std::vector<double> l(count);
  for (std::size_t m = 0; m < count; ++m) l[m] = dl * static_cast<double>(m + 1);
  return l;
}

std::vector<double> uniform_frequencies(double lambda_max, std::size_t count) {
  if (!(lambda_max > 0.0) || count == 0) throw InvalidArgument("uniform_frequencies: bad range");
  std::vector<double> l(count);
  for (std::size_t m = 0; m < count; ++m)
    l[m] = lambda_max * static_cast<double>(m + 1) / static_cast<double>(count);
  return l;
}

std::vector<double> uniform_angles(std::size_t count) {
  std::vector<double> a(count);
  for (std::size_t m = 0; m < count; ++m)
    a[m] = kPi * static_cast<double>(m) / static_cast<double>(count);
  return a;
}

std::vector<double> covering_offsets(const Grid& grid, std::size_t count) {
  if (count < 2) throw InvalidArgument("covering_offsets: need at least 2 offsets");
  const Vec3 c0 = 0.5 * (grid.lower() + grid.upper());
  const double r = norm(c0) + 0.5 * grid.diameter();
  std::vector<double> s(count);
  for (std::size_t m = 0; m < count; ++m)
    s[m] = -r + 2.0 * r * static_cast<double>(m) / static_cast<double>(count - 1);
  return s;
}

double max_abs(const WaveData& data) {
  return std::visit(
      [](const auto& d) {
        double m = 0.0;
        for (const auto& v : d.values) m = std::max(m, std::abs(v));
        return m;
      },
      data);
}

}  // namespace synfocus
