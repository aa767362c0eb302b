// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>

#include "synfocus/grid.hpp"
#include "synfocus/kernel.hpp"

namespace synfocus {

/// "dim,counts...,origin...,spacing..." with dim entries per group, printed
/// with round-trip precision.
std::string format_grid(const Grid& grid);
Grid parse_grid(const std::string& text);

/// CSV: "# grid: <format_grid>", "# layout: row-major x-fastest", then one
/// value per line in layout order. Round-trips bit-exactly.
void write_field_csv(std::ostream& os, const ScalarField& field);
ScalarField read_field_csv(std::istream& is);

/// CSV with one comma-separated row per electrode. The header records the
/// electrode count, the interior grid, the units, the conduction grid (if
/// any) and one "# electrode" line per boundary point.
void write_kernel_csv(std::ostream& os, const KernelMatrix& kernel);
KernelMatrix read_kernel_csv(std::istream& is);

/// Plain (P2) 8-bit PGM with min-max scaling; the scale is recorded in a
/// header comment. 3D fields export their middle z-slice. Rows are written
/// top (largest y) first.
void write_pgm(std::ostream& os, const ScalarField& field);

/// Writes to a file path, throwing Error when the file cannot be opened.
void save_field_csv(const std::string& path, const ScalarField& field);
void save_kernel_csv(const std::string& path, const KernelMatrix& kernel);
void save_pgm(const std::string& path, const ScalarField& field);

}  // namespace synfocus
