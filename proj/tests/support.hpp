// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstring>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "synfocus/electrodes.hpp"
#include "synfocus/grid.hpp"
#include "synfocus/kernel.hpp"
#include "synfocus/parallel.hpp"

namespace synfocus::testing {

// Rows labelled by dummy points; for kernels that do not come from a solve.
inline BoundaryElectrodes labels(std::size_t n) {
  std::vector<Vec3> pts(n), normals(n, Vec3{1.0, 0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) pts[j] = {2.0 + static_cast<double>(j), 0.0, 0.0};
  return BoundaryElectrodes::from_parts(std::nullopt, pts, normals, std::vector<double>(n, 1.0),
                                        std::vector<double>(n, 0.0), std::vector<std::size_t>(n, 0));
}

inline KernelMatrix random_kernel(const Grid& g, std::size_t rows, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> v(rows * g.size());
  for (double& x : v) x = n(rng);
  return KernelMatrix(labels(rows), g, std::move(v));
}

inline KernelMatrix combine(double a, const KernelMatrix& x, double b, const KernelMatrix& y) {
  std::vector<double> v(x.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * x.values()[i] + b * y.values()[i];
  return KernelMatrix(x.electrodes(), x.interior(), std::move(v));
}

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline bool bit_identical(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::memcmp(&a[i], &b[i], sizeof(double)) != 0) return false;
  return true;
}

// Runs the parallel paths with several threads even on a single core.
struct ThreadLimit {
  explicit ThreadLimit(int n) { set_thread_limit(n); }
  ~ThreadLimit() { set_thread_limit(0); }
};

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("synfocus_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace synfocus::testing
