// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "synfocus/kernel.hpp"
#include "synfocus/parallel.hpp"
#include "synfocus/wavegen.hpp"

namespace synfocus {

/// Detector-side data ready for backprojection: for each transducer, a
/// radial profile sampled on a uniform t lattice.
struct FilteredDetectorData {
  TransducerArray array;
  std::vector<double> t_samples;
  std::vector<double> values;  ///< [transducer][t]

  double at(std::size_t i, std::size_t k) const { return values[i * t_samples.size() + k]; }
};

/// Reconstructed kernel rows (one field per electrode) plus diagnostics.
struct Reconstruction {
  std::vector<ScalarField> fields;
  std::vector<std::string> warnings;
  /// Largest |imaginary part| / max |real part| (Fourier route only).
  double imag_residue = 0.0;
};

/// (1/t) d/dt (g(z, t) / t) for one electrode, by central differences on
/// the radii lattice (g/t is taken as 0 at t = 0).
FilteredDetectorData filter_spherical_means(const SphericalMeanData& data, std::size_t electrode);

/// h(z, t) = -(1/t) int [cos(lambda t) Im W - sin(lambda t) Re W] lambda dlambda
/// by the trapezoid rule on the frequency lattice (lambda = 0 contributes 0),
/// with a cosine taper over the top 10% of the band.
FilteredDetectorData monochromatic_detector_profile(const MonochromaticData& data,
                                                    std::size_t electrode,
                                                    std::span<const double> t_samples);

/// scale * div_x sum_i w_i n(z_i) q_i(|z_i - x|): linear interpolation in t
/// (zero outside the lattice), fixed summation order over transducers,
/// divergence by second-order differences on \p out.
ScalarField backproject_divergence(const FilteredDetectorData& filtered, const Grid& out,
                                   double scale, Exec exec = Exec::parallel);

/// Spherical-pulse route for a spherical aperture in 3D:
/// f = 1/(8 pi^2) div int n(z) [(1/t) d/dt (g/t)]_{t=|z-x|} dA(z).
Reconstruction invert_spherical_means_3d(const SphericalMeanData& data, const Grid& out,
                                         Exec exec = Exec::parallel);

/// Monochromatic route in 3D: f = -1/(2 pi^2) div int n(z) h(z, |x - z|) dA(z).
/// \p t_samples defaults (when empty) to 4 * ceil(3R / dx) uniform samples
/// up to 3R, R the aperture radius.
Reconstruction invert_monochromatic_3d(const MonochromaticData& data, const Grid& out,
                                       std::span<const double> t_samples = {},
                                       Exec exec = Exec::parallel);

/// Inverse DFT per electrode; \p out must be the lattice the data were
/// measured on. Returns the real part.
Reconstruction invert_fourier(const FourierData& data, const Grid& out);

/// Filtered backprojection: band-limited ramp filter on the offset lattice
/// (zero-padded FFT convolution), linear interpolation in offset,
/// angular weight pi / n_angles.
Reconstruction invert_xray_2d(const Sinogram& data, const Grid& out, Exec exec = Exec::parallel);

enum class FocusMethod { spherical_pulse, monochromatic, plane_wave, xray };

/// Applies the route matching \p method to every electrode and assembles
/// the kernel. The 2D pulse and monochromatic routes are not available.
KernelMatrix focus_kernel(const WaveData& data, FocusMethod method, const Grid& out,
                          const BoundaryElectrodes& electrodes, Exec exec = Exec::parallel,
                          std::vector<std::string>* warnings = nullptr);

}  // namespace synfocus
