// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "synfocus/phantom.hpp"

namespace synfocus {

enum class Mode { phantom, forward, kernel, measure, focus, endtoend, validate };
enum class WaveFamily { plane, xray, pulse, monochromatic };
enum class KernelMethod { bruteforce, adjoint };

/// Settings of one pipeline run. The conduction domain is the square
/// [-1/2, 1/2]^2; the transducer circle has radius \`aperture_radius\`.
struct ExperimentConfig {
  Mode mode = Mode::endtoend;
  std::size_t grid = 64;        ///< conduction cells per side
  std::size_t interior = 32;    ///< kernel pixels per side (must divide grid)
  std::size_t transducers = 128;
  std::size_t radii = 256;
  std::size_t frequencies = 0;  ///< 0: spacing pi / (2 diameter) up to pi / dx
  std::size_t angles = 360;
  std::size_t offsets = 0;      ///< 0: spacing dx / 8 over the circumscribed disk
  std::size_t oversample = 2;
  WaveFamily family = WaveFamily::plane;
  KernelMethod kernel_method = KernelMethod::bruteforce;
  double noise = 0.0;
  std::uint64_t seed = 1;
  int threads = 0;              ///< 0: runtime default
  double eps = 1e-3;
  double tol = 1e-10;
  double aperture_radius = 0.75;
  std::vector<Disk> disks = default_disks();
  std::string kernel_file;      ///< optional kernel CSV used instead of computing one
  std::string output_dir = ".";
};

/// Parses flat \`key = value\` lines; \`#\` starts a comment; lists are
/// comma-separated. Absent keys keep their defaults; each \`disk = x, y, r, a\`
/// line adds a disk (replacing the default set). Unknown keys, malformed
/// lines and invalid values raise ConfigError naming the line or key.
ExperimentConfig parse_config(const std::string& text);

/// Cross-field checks (divisibility, family valid for the mode); throws ConfigError.
void validate_config(const ExperimentConfig& cfg);

/// \`key = value\` lines reproducing every setting.
std::vector<std::pair<std::string, std::string>> echo_config(const ExperimentConfig& cfg);

Mode parse_mode(const std::string& name);
std::string to_string(Mode mode);
std::string to_string(WaveFamily family);

}  // namespace synfocus
