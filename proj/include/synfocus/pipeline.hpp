// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "synfocus/config.hpp"

namespace synfocus {

/// Ordered \`name = value\` records written to metrics.txt.
class Metrics {
 public:
  void set(const std::string& name, const std::string& value);
  void set(const std::string& name, double value);
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  /// Value of \p name, or empty when absent.
  std::string get(const std::string& name) const;
  void write(const std::string& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Runs \p cfg.mode, writing CSV/PGM outputs and metrics.txt into
/// cfg.output_dir (created if needed). Stage failures are rethrown with the
/// stage name prefixed, keeping their error class.
Metrics run_pipeline(const ExperimentConfig& cfg);

/// Full chain: phantom, forward solve, brute-force kernel, measurement,
/// noise, focusing. Reports the relative kernel error and stage timings.
Metrics run_endtoend(const ExperimentConfig& cfg);

}  // namespace synfocus
