// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "synfocus/focusing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "synfocus/error.hpp"

namespace synfocus {

namespace {

constexpr double kPi = std::numbers::pi;

// Uniform spacing of a lattice, or throws.
double lattice_step(std::span<const double> v, const char* what) {
  if (v.size() < 2) throw InvalidArgument(std::string(what) + ": need at least two samples");
  const double step = (v.back() - v.front()) / static_cast<double>(v.size() - 1);
  if (!(step > 0.0)) throw InvalidArgument(std::string(what) + ": samples must increase");
  for (std::size_t k = 1; k < v.size(); ++k)
    if (std::abs(v[k] - v[k - 1] - step) > 1e-9 * std::max(std::abs(v.back()), step))
      throw InvalidArgument(std::string(what) + ": samples must be uniformly spaced");
  return step;
}

double min_distance_to_box(const Grid& g, const TransducerArray& array) {
  const Vec3 lo = g.lower(), hi = g.upper();
  double best = INFINITY;
  for (const Vec3& z : array.positions()) {
    double d2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const double d = z[a] < lo[a] ? lo[a] - z[a] : (z[a] > hi[a] ? z[a] - hi[a] : 0.0);
      d2 += d * d;
    }
    best = std::min(best, std::sqrt(d2));
  }
  return best;
}

void check_shell(const Grid& out, const TransducerArray& array, double dt,
                 std::vector<std::string>& warnings) {
  const double d = min_distance_to_box(out, array);
  if (d < 2.0 * dt) {
    std::ostringstream msg;
    msg << "excluded shell: output grid comes within " << d
        << " of a transducer (< 2 dt = " << 2.0 * dt << "); values there are unreliable";
    warnings.push_back(msg.str());
  }
}

void check_electrode(std::size_t electrode, std::size_t n) {
  if (electrode >= n) throw InvalidArgument("focusing: electrode index out of range");
}

// Centered k-lattice index -> FFT index on a grid with the same counts.
std::vector<std::size_t> fft_order(const Grid& kgrid) {
  std::vector<std::size_t> idx(kgrid.size());
  for (std::size_t q = 0; q < kgrid.size(); ++q) {
    const auto c = kgrid.unravel(q);
    std::size_t f[3] = {0, 0, 0};
    for (int a = 0; a < kgrid.dim(); ++a) {
      const long n = static_cast<long>(kgrid.count(a));
      const long m = static_cast<long>(c[a]) - n / 2;
      f[a] = static_cast<std::size_t>(((m % n) + n) % n);
    }
    idx[q] = kgrid.index(f[0], f[1], f[2]);
  }
  return idx;
}

}  // namespace

FilteredDetectorData filter_spherical_means(const SphericalMeanData& data, std::size_t electrode) {
  check_electrode(electrode, data.n_electrodes);
  const auto& t = data.radii;
  const double dt = lattice_step(t, "filter_spherical_means: radii");
  const bool starts_at_step = std::abs(t.front() - dt) <= 1e-9 * dt;
  const std::size_t n_t = t.size(), n_z = data.array.size();
  FilteredDetectorData out{data.array, t, std::vector<double>(n_z * n_t)};
  std::vector<double> q(n_t);
  for (std::size_t i = 0; i < n_z; ++i) {
    for (std::size_t k = 0; k < n_t; ++k) q[k] = data.at(i, k, electrode) / t[k];
    for (std::size_t k = 0; k < n_t; ++k) {
      double dq;
      if (k == 0)
        dq = starts_at_step ? q[1] / (2.0 * dt) : (q[1] - q[0]) / dt;
      else if (k + 1 == n_t)
        dq = (q[k] - q[k - 1]) / dt;
      else
        dq = (q[k + 1] - q[k - 1]) / (2.0 * dt);
      out.values[i * n_t + k] = dq / t[k];
    }
  }
  return out;
}

FilteredDetectorData monochromatic_detector_profile(const MonochromaticData& data,
                                                    std::size_t electrode,
                                                    std::span<const double> t_samples) {
  check_electrode(electrode, data.n_electrodes);
  const auto& lam = data.frequencies;
  if (lam.empty()) throw InvalidArgument("invert_monochromatic_3d: empty frequency list");
  if (lam.size() >= 2) lattice_step(lam, "invert_monochromatic_3d: frequencies");
  for (double t : t_samples)
    if (!(t > 0.0)) throw InvalidArgument("invert_monochromatic_3d: t samples must be positive");
  const std::size_t n_f = lam.size(), n_t = t_samples.size(), n_z = data.array.size();

  // Trapezoid weights on {0, l_1, ..., l_M} times the top-band cosine taper.
  const double l_max = lam.back();
  std::vector<double> w(n_f);
  for (std::size_t m = 0; m < n_f; ++m) {
    const double left = lam[m] - (m ? lam[m - 1] : 0.0);
    const double right = m + 1 < n_f ? lam[m + 1] - lam[m] : 0.0;
    double taper = 1.0;
    if (lam[m] > 0.9 * l_max)
      taper = 0.5 * (1.0 + std::cos(kPi * (lam[m] - 0.9 * l_max) / (0.1 * l_max)));
    w[m] = 0.5 * (left + right) * taper * lam[m];
  }

  FilteredDetectorData out{data.array, std::vector<double>(t_samples.begin(), t_samples.end()),
                           std::vector<double>(n_z * n_t)};
  for (std::size_t i = 0; i < n_z; ++i) {
    for (std::size_t k = 0; k < n_t; ++k) {
      const double t = t_samples[k];
      double acc = 0.0;
      for (std::size_t m = 0; m < n_f; ++m) {
        const Complex v = data.at(i, m, electrode);
        acc += w[m] * (std::cos(lam[m] * t) * v.imag() - std::sin(lam[m] * t) * v.real());
      }
      out.values[i * n_t + k] = -acc / t;
    }
  }
  return out;
}

ScalarField backproject_divergence(const FilteredDetectorData& filtered, const Grid& out,
                                   double scale, Exec exec) {
  const auto& arr = filtered.array;
  if (arr.dim() != out.dim()) throw InvalidArgument("backprojection: dimension mismatch");
  const auto& t = filtered.t_samples;
  const double dt = lattice_step(t, "backprojection: t samples");
  const double t0 = t.front();
  const std::size_t n_t = t.size(), n_z = arr.size(), n_x = out.size();
  const int dim = out.dim();

  std::vector<double> field(static_cast<std::size_t>(dim) * n_x, 0.0);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::size_t p = 0; p < n_x; ++p) {
    const Vec3 x = out.center(p);
    double acc[3] = {0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n_z; ++i) {
      const Vec3& z = arr.positions()[i];
      const double s = (norm(z - x) - t0) / dt;
      if (s < 0.0 || s > static_cast<double>(n_t - 1)) continue;
      const std::size_t k = std::min(static_cast<std::size_t>(s), n_t - 2);
      const double f = s - static_cast<double>(k);
      const double* row = filtered.values.data() + i * n_t;
      const double v = arr.weights()[i] * ((1.0 - f) * row[k] + f * row[k + 1]);
      const Vec3& n = arr.normals()[i];
      for (int a = 0; a < dim; ++a) acc[a] += v * n[a];
    }
    for (int a = 0; a < dim; ++a) field[static_cast<std::size_t>(a) * n_x + p] = acc[a];
  }

  ScalarField result(out);
  for (int a = 0; a < dim; ++a) {
    const std::size_t n = out.count(a);
    const double h = out.spacing()[a];
    const double* comp = field.data() + static_cast<std::size_t>(a) * n_x;
    std::size_t stride = 1;
    for (int b = 0; b < a; ++b) stride *= out.count(b);
    for (std::size_t p = 0; p < n_x; ++p) {
      const std::size_t c = out.unravel(p)[a];
      double d;
      if (c == 0)
        d = (-3.0 * comp[p] + 4.0 * comp[p + stride] - comp[p + 2 * stride]) / (2.0 * h);
      else if (c + 1 == n)
        d = (3.0 * comp[p] - 4.0 * comp[p - stride] + comp[p - 2 * stride]) / (2.0 * h);
      else
        d = (comp[p + stride] - comp[p - stride]) / (2.0 * h);
      result[p] += scale * d;
    }
  }
  return result;
}

Reconstruction invert_spherical_means_3d(const SphericalMeanData& data, const Grid& out,
                                         Exec exec) {
  if (data.array.dim() != 3 || out.dim() != 3)
    throw InvalidArgument("invert_spherical_means_3d: 3D data and output grid required");
  Reconstruction rec;
  const double dt = lattice_step(data.radii, "invert_spherical_means_3d: radii");
  check_shell(out, data.array, dt, rec.warnings);
  for (std::size_t j = 0; j < data.n_electrodes; ++j) {
    const auto filtered = filter_spherical_means(data, j);
    rec.fields.push_back(backproject_divergence(filtered, out, 1.0 / (8.0 * kPi * kPi), exec));
  }
  return rec;
}

Reconstruction invert_monochromatic_3d(const MonochromaticData& data, const Grid& out,
                                       std::span<const double> t_samples, Exec exec) {
  if (data.array.dim() != 3 || out.dim() != 3)
    throw InvalidArgument("invert_monochromatic_3d: 3D data and output grid required");
  if (data.frequencies.empty())
    throw InvalidArgument("invert_monochromatic_3d: empty frequency list");
  std::vector<double> t_default;
  if (t_samples.empty()) {
    const double t_max = 3.0 * data.array.radius();
    t_default = uniform_radii(t_max, 4 * static_cast<std::size_t>(std::ceil(t_max / out.min_spacing())));
    t_samples = t_default;
  }
  Reconstruction rec;
  check_shell(out, data.array, lattice_step(t_samples, "invert_monochromatic_3d: t samples"),
              rec.warnings);
  for (std::size_t j = 0; j < data.n_electrodes; ++j) {
    const auto profile = monochromatic_detector_profile(data, j, t_samples);
    rec.fields.push_back(backproject_divergence(profile, out, -1.0 / (2.0 * kPi * kPi), exec));
  }
  return rec;
}

Reconstruction invert_fourier(const FourierData& data, const Grid& out) {
  const Grid& kg = data.kgrid;
  if (kg.dim() != out.dim() || kg.counts() != out.counts())
    throw InvalidArgument("invert_fourier: k-lattice does not match the output grid");
  for (int a = 0; a < out.dim(); ++a) {
    const double n = static_cast<double>(out.count(a));
    const double dk = 2.0 * kPi / (n * out.spacing()[a]);
    if (std::abs(kg.spacing()[a] - dk) > 1e-9 * dk ||
        std::abs(kg.origin()[a] + std::floor(n / 2.0) * dk) > 1e-9 * dk * n ||
        std::abs(data.x_origin[a] - out.origin()[a]) > 1e-9 * out.diameter())
      throw InvalidArgument("invert_fourier: k-lattice does not match the output grid");
  }
  const auto order = fft_order(kg);
  const std::size_t n = kg.size(), n_e = data.n_electrodes;
  std::vector<Complex> phase(n);
  for (std::size_t q = 0; q < n; ++q) phase[q] = std::polar(1.0, -dot(kg.center(q), out.origin()));
  const double inv_measure = 1.0 / out.domain_measure();

  Reconstruction rec;
  std::vector<Complex> buf(n);
  for (std::size_t j = 0; j < n_e; ++j) {
    for (std::size_t q = 0; q < n; ++q) buf[order[q]] = data.at(q, j) * phase[q];
    detail::dft(buf, out.counts(), -1);
    ScalarField f(out);
    double max_re = 0.0, max_im = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      f[p] = buf[p].real() * inv_measure;
      max_re = std::max(max_re, std::abs(buf[p].real()));
      max_im = std::max(max_im, std::abs(buf[p].imag()));
    }
    if (max_re > 0.0) rec.imag_residue = std::max(rec.imag_residue, max_im / max_re);
    rec.fields.push_back(std::move(f));
  }
  return rec;
}

Reconstruction invert_xray_2d(const Sinogram& data, const Grid& out, Exec exec) {
  if (out.dim() != 2) throw InvalidArgument("invert_xray_2d: output grid must be 2D");
  const std::size_t n_a = data.angles.size(), n_s = data.offsets.size(), n_e = data.n_electrodes;
  if (n_a == 0) throw InvalidArgument("invert_xray_2d: no angles");
  for (std::size_t m = 0; m < n_a; ++m)
    if (std::abs(data.angles[m] - kPi * static_cast<double>(m) / static_cast<double>(n_a)) > 1e-9)
      throw InvalidArgument("invert_xray_2d: angles must be uniform on [0, pi)");
  const double ds = lattice_step(data.offsets, "invert_xray_2d: offsets");
  const double s0 = data.offsets.front();

  Reconstruction rec;
  if (n_a < 8) rec.warnings.push_back("invert_xray_2d: fewer than 8 angles, expect severe streaking");

  // Band-limited ramp (spatial Ram-Lak samples), circularly embedded.
  std::size_t pad = 1;
  while (pad < 2 * n_s) pad *= 2;
  std::vector<Complex> ramp(pad);
  for (std::size_t i = 0; i < pad; ++i) {
    const long n = i <= pad / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(pad);
    double h = 0.0;
    if (n == 0)
      h = 1.0 / (4.0 * ds * ds);
    else if (n % 2 != 0)
      h = -1.0 / (kPi * kPi * static_cast<double>(n * n) * ds * ds);
    ramp[i] = h;
  }
  detail::dft(ramp, {pad, 1, 1}, -1);

  const std::size_t n_x = out.size();
  std::vector<double> cos_a(n_a), sin_a(n_a);
  for (std::size_t m = 0; m < n_a; ++m) {
    cos_a[m] = std::cos(data.angles[m]);
    sin_a[m] = std::sin(data.angles[m]);
  }
  const double weight = kPi / static_cast<double>(n_a);
  rec.fields.assign(n_e, ScalarField(out));

#pragma omp parallel if (exec == Exec::parallel)
  {
    std::vector<Complex> buf(pad);
    std::vector<double> filtered(n_a * n_s);
#pragma omp for schedule(dynamic)
    for (std::size_t j = 0; j < n_e; ++j) {
      for (std::size_t m = 0; m < n_a; ++m) {
        std::fill(buf.begin(), buf.end(), Complex(0.0));
        for (std::size_t s = 0; s < n_s; ++s) buf[s] = data.at(m, s, j);
        detail::dft(buf, {pad, 1, 1}, -1);
        for (std::size_t i = 0; i < pad; ++i) buf[i] *= ramp[i];
        detail::dft(buf, {pad, 1, 1}, +1);
        for (std::size_t s = 0; s < n_s; ++s)
          filtered[m * n_s + s] = buf[s].real() * ds / static_cast<double>(pad);
      }
      ScalarField& f = rec.fields[j];
      for (std::size_t p = 0; p < n_x; ++p) {
        const Vec3 x = out.center(p);
        double acc = 0.0;
        for (std::size_t m = 0; m < n_a; ++m) {
          const double u = (x[0] * cos_a[m] + x[1] * sin_a[m] - s0) / ds;
          if (u < 0.0 || u > static_cast<double>(n_s - 1)) continue;
          const std::size_t k = std::min(static_cast<std::size_t>(u), n_s - 2);
          const double fr = u - static_cast<double>(k);
          acc += (1.0 - fr) * filtered[m * n_s + k] + fr * filtered[m * n_s + k + 1];
        }
        f[p] = weight * acc;
      }
    }
  }
  return rec;
}

KernelMatrix focus_kernel(const WaveData& data, FocusMethod method, const Grid& out,
                          const BoundaryElectrodes& electrodes, Exec exec,
                          std::vector<std::string>* warnings) {
  Reconstruction rec;
  switch (method) {
    case FocusMethod::spherical_pulse: {
      const auto* d = std::get_if<SphericalMeanData>(&data);
      if (!d) throw InvalidArgument("focus_kernel: spherical-pulse route needs spherical-mean data");
      if (d->array.dim() != 3)
        throw InvalidArgument("focus_kernel: spherical-pulse inversion is available in 3D only");
      rec = invert_spherical_means_3d(*d, out, exec);
      break;
    }
    case FocusMethod::monochromatic: {
      const auto* d = std::get_if<MonochromaticData>(&data);
      if (!d) throw InvalidArgument("focus_kernel: monochromatic route needs monochromatic data");
      if (d->array.dim() != 3)
        throw InvalidArgument("focus_kernel: monochromatic inversion is available in 3D only");
      rec = invert_monochromatic_3d(*d, out, {}, exec);
      break;
    }
    case FocusMethod::plane_wave: {
      const auto* d = std::get_if<FourierData>(&data);
      if (!d) throw InvalidArgument("focus_kernel: plane-wave route needs Fourier data");
      rec = invert_fourier(*d, out);
      break;
    }
    case FocusMethod::xray: {
      const auto* d = std::get_if<Sinogram>(&data);
      if (!d) throw InvalidArgument("focus_kernel: x-ray route needs a sinogram");
      rec = invert_xray_2d(*d, out, exec);
      break;
    }
  }
  if (rec.fields.size() != electrodes.size())
    throw InvalidArgument("focus_kernel: data and electrodes disagree on the electrode count");
  if (warnings) warnings->insert(warnings->end(), rec.warnings.begin(), rec.warnings.end());
  return KernelMatrix::from_rows(electrodes, rec.fields);
}

}  // namespace synfocus
