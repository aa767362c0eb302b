// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

#include "synfocus/kernel.hpp"
#include "synfocus/parallel.hpp"
#include "synfocus/transducers.hpp"

namespace synfocus {

using Complex = std::complex<double>;

/// Responses to spherical pulses: integrals of each kernel row over the
/// circles/spheres |x - z_i| = t_k. Layout [transducer][radius][electrode].
struct SphericalMeanData {
  TransducerArray array;
  std::vector<double> radii;
  std::size_t n_electrodes = 0;
  std::vector<double> values;

  double at(std::size_t i, std::size_t k, std::size_t j) const {
    return values[(i * radii.size() + k) * n_electrodes + j];
  }
};

/// Time-Fourier responses to monochromatic spherical waves,
/// W(z_i, lambda_m) = int l(x) exp(i lambda |x - z|) / (4 pi |x - z|) dx.
/// Layout [transducer][frequency][electrode].
struct MonochromaticData {
  TransducerArray array;
  std::vector<double> frequencies;
  std::size_t n_electrodes = 0;
  std::vector<Complex> values;

  Complex at(std::size_t i, std::size_t m, std::size_t j) const {
    return values[(i * frequencies.size() + m) * n_electrodes + j];
  }
};

/// Plane-wave responses int exp(i k.x) l(x) dx on the lattice conjugate to
/// the interior grid. \`kgrid\` is centered: index 0 holds k = -floor(N/2) dk.
/// \`x_origin\` is the interior grid origin the phases refer to.
/// Layout [k][electrode].
struct FourierData {
  Grid kgrid;
  Vec3 x_origin{};
  std::size_t n_electrodes = 0;
  std::vector<Complex> values;

  Complex at(std::size_t k, std::size_t j) const { return values[k * n_electrodes + j]; }
};

/// Line integrals of each kernel row over {x : x.(cos a, sin a) = s}.
/// Layout [angle][offset][electrode].
struct Sinogram {
  std::vector<double> angles;
  std::vector<double> offsets;
  std::size_t n_electrodes = 0;
  std::vector<double> values;

  double at(std::size_t a, std::size_t s, std::size_t j) const {
    return values[(a * offsets.size() + s) * n_electrodes + j];
  }
};

using WaveData = std::variant<SphericalMeanData, MonochromaticData, FourierData, Sinogram>;

/// Circle (2D) or sphere (3D) integrals by uniform angular quadrature of the
/// multilinear interpolant of each kernel row (zero outside the grid).
/// Samples per circle: ceil(2 pi t / dx) * oversample; spheres use
/// ceil(pi t / dx) * oversample polar bands of exact area.
SphericalMeanData measure_spherical_pulse(const KernelMatrix& kernel, const TransducerArray& array,
                                          std::span<const double> radii,
                                          std::size_t oversample = 2,
                                          Exec exec = Exec::parallel);

/// Pixel sum of each kernel row against the Helmholtz Green's function.
/// Every transducer must lie outside the interior grid box.
MonochromaticData measure_monochromatic(const KernelMatrix& kernel, const TransducerArray& array,
                                        std::span<const double> frequencies,
                                        Exec exec = Exec::parallel);

/// Discrete Fourier transform of each kernel row (scaled by the pixel area).
FourierData measure_plane_waves(const KernelMatrix& kernel);

/// Line integrals sampled every dx/2 along the line with bilinear
/// interpolation. 2D kernels only.
Sinogram measure_line_integrals(const KernelMatrix& kernel, std::span<const double> angles,
                                std::span<const double> offsets, Exec exec = Exec::parallel);

/// Adds i.i.d. zero-mean Gaussian noise with standard deviation
/// level * RMS(data) per sample (complex samples: per modulus, split evenly
/// over the two components). Plane-wave noise is Hermitian-symmetric, as the
/// data of a real kernel are. Deterministic for a fixed seed.
SphericalMeanData add_noise(const SphericalMeanData& data, double level, std::uint64_t seed);
MonochromaticData add_noise(const MonochromaticData& data, double level, std::uint64_t seed);
FourierData add_noise(const FourierData& data, double level, std::uint64_t seed);
Sinogram add_noise(const Sinogram& data, double level, std::uint64_t seed);
WaveData add_noise(const WaveData& data, double level, std::uint64_t seed);

/// t_k = k * t_max / count, k = 1..count.
std::vector<double> uniform_radii(double t_max, std::size_t count);
/// lambda_m = m * d_lambda for m = 1..floor(lambda_max / d_lambda), with
/// d_lambda = pi / (2 diameter) and lambda_max = pi / dx.
std::vector<double> default_frequencies(double dx, double diameter);
/// lambda_m = m * lambda_max / count, m = 1..count.
std::vector<double> uniform_frequencies(double lambda_max, std::size_t count);
/// a_m = m pi / count, m = 0..count-1.
std::vector<double> uniform_angles(std::size_t count);
/// count offsets uniformly spanning the grid's circumscribed disk about the
/// origin, endpoints included.
std::vector<double> covering_offsets(const Grid& grid, std::size_t count);

/// Largest |value| over all samples, for zero checks.
double max_abs(const WaveData& data);

/// CSV serialization with a geometry header block.
void write_csv(std::ostream& os, const SphericalMeanData& data);
void write_csv(std::ostream& os, const MonochromaticData& data);
void write_csv(std::ostream& os, const FourierData& data);
void write_csv(std::ostream& os, const Sinogram& data);
void write_csv(std::ostream& os, const WaveData& data);

}  // namespace synfocus
