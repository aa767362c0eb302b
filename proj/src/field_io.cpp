// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "synfocus/field_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "synfocus/error.hpp"

namespace synfocus {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> split_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    while (end && *end == ' ') ++end;
    if (end == item.c_str() || (end && *end != '\0'))
      throw InvalidArgument("csv: cannot parse number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

// Returns the text after "prefix" on a header line, or throws.
std::string expect_header(std::istream& is, const std::string& prefix) {
  std::string line;
  if (!std::getline(is, line) || line.rfind(prefix, 0) != 0)
    throw InvalidArgument("csv: expected header line starting with '" + prefix + "'");
  return line.substr(prefix.size());
}

template <class Fn>
void save(const std::string& path, Fn&& write) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  write(os);
  if (!os) throw Error("write to '" + path + "' failed");
}

}  // namespace

std::string format_grid(const Grid& grid) {
  std::string s = std::to_string(grid.dim());
  for (int a = 0; a < grid.dim(); ++a) s += "," + std::to_string(grid.count(a));
  for (int a = 0; a < grid.dim(); ++a) s += "," + fmt(grid.origin()[a]);
  for (int a = 0; a < grid.dim(); ++a) s += "," + fmt(grid.spacing()[a]);
  return s;
}

Grid parse_grid(const std::string& text) {
  const auto v = split_numbers(text);
  if (v.empty()) throw InvalidArgument("grid descriptor: empty");
  const int dim = static_cast<int>(v[0]);
  if ((dim != 2 && dim != 3) || v.size() != static_cast<std::size_t>(1 + 3 * dim))
    throw InvalidArgument("grid descriptor: malformed '" + text + "'");
  std::array<std::size_t, 3> counts{1, 1, 1};
  Vec3 origin{}, spacing{1.0, 1.0, 1.0};
  for (int a = 0; a < dim; ++a) {
    counts[a] = static_cast<std::size_t>(v[1 + a]);
    origin[a] = v[1 + dim + a];
    spacing[a] = v[1 + 2 * dim + a];
  }
  return Grid(dim, origin, spacing, counts);
}

void write_field_csv(std::ostream& os, const ScalarField& field) {
  os << "# grid: " << format_grid(field.grid()) << '\n';
  os << "# layout: row-major x-fastest\n";
  for (double v : field.values()) os << fmt(v) << '\n';
}

ScalarField read_field_csv(std::istream& is) {
  const Grid grid = parse_grid(expect_header(is, "# grid: "));
  const std::string layout = expect_header(is, "# layout: ");
  if (layout != "row-major x-fastest") throw InvalidArgument("csv: unsupported layout " + layout);
  std::vector<double> values;
  values.reserve(grid.size());
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto v = split_numbers(line);
    if (v.size() != 1) throw InvalidArgument("csv: expected one value per line");
    values.push_back(v[0]);
  }
  return ScalarField(grid, std::move(values));
}

void write_kernel_csv(std::ostream& os, const KernelMatrix& kernel) {
  const BoundaryElectrodes& e = kernel.electrodes();
  os << "# kernel: electrodes=" << kernel.rows() << " pixels=" << kernel.cols() << '\n';
  os << "# interior: " << format_grid(kernel.interior()) << '\n';
  os << "# units: delta_h per unit delta_log_sigma per unit area\n";
  os << "# conduction: " << (e.conduction_grid() ? format_grid(*e.conduction_grid()) : "none")
     << '\n';
  for (std::size_t j = 0; j < e.size(); ++j) {
    const Vec3& p = e.points()[j];
    const Vec3& n = e.normals()[j];
    os << "# electrode: " << fmt(p[0]) << ',' << fmt(p[1]) << ',' << fmt(p[2]) << ','
       << fmt(n[0]) << ',' << fmt(n[1]) << ',' << fmt(n[2]) << ',' << fmt(e.lengths()[j]) << ','
       << fmt(e.currents()[j]) << ',' << e.cells()[j] << '\n';
  }
  for (std::size_t j = 0; j < kernel.rows(); ++j) {
    const auto r = kernel.row(j);
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << fmt(r[i]);
    os << '\n';
  }
}

KernelMatrix read_kernel_csv(std::istream& is) {
  const std::string head = expect_header(is, "# kernel: electrodes=");
  const std::size_t n_e = std::strtoul(head.c_str(), nullptr, 10);
  const Grid interior = parse_grid(expect_header(is, "# interior: "));
  expect_header(is, "# units: ");
  const std::string cond = expect_header(is, "# conduction: ");
  std::optional<Grid> cgrid;
  if (cond != "none") cgrid = parse_grid(cond);

  std::vector<Vec3> points, normals;
  std::vector<double> lengths, currents;
  std::vector<std::size_t> cells;
  for (std::size_t j = 0; j < n_e; ++j) {
    const auto v = split_numbers(expect_header(is, "# electrode: "));
    if (v.size() != 9) throw InvalidArgument("kernel csv: malformed electrode line");
    points.push_back({v[0], v[1], v[2]});
    normals.push_back({v[3], v[4], v[5]});
    lengths.push_back(v[6]);
    currents.push_back(v[7]);
    cells.push_back(static_cast<std::size_t>(v[8]));
  }
  std::vector<double> values;
  values.reserve(n_e * interior.size());
  std::string line;
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto v = split_numbers(line);
    if (v.size() != interior.size()) throw InvalidArgument("kernel csv: row length mismatch");
    values.insert(values.end(), v.begin(), v.end());
    ++rows;
  }
  if (rows != n_e) throw InvalidArgument("kernel csv: row count mismatch");
  return KernelMatrix(BoundaryElectrodes::from_parts(cgrid, std::move(points), std::move(normals),
                                                     std::move(lengths), std::move(currents),
                                                     std::move(cells)),
                      interior, std::move(values));
}

void write_pgm(std::ostream& os, const ScalarField& field) {
  const Grid& g = field.grid();
  const std::size_t nx = g.count(0), ny = g.count(1);
  const std::size_t k = g.dim() == 3 ? g.count(2) / 2 : 0;
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const double v = field[g.index(i, j, k)];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  const double range = hi - lo;
  os << "P2\n# scale: min=" << fmt(lo) << " max=" << fmt(hi) << '\n';
  os << nx << ' ' << ny << "\n255\n";
  for (std::size_t j = ny; j-- > 0;) {
    for (std::size_t i = 0; i < nx; ++i) {
      const double v = field[g.index(i, j, k)];
      const long level = range > 0.0 ? std::lround(255.0 * (v - lo) / range) : 0;
      os << (i ? " " : "") << std::clamp(level, 0L, 255L);
    }
    os << '\n';
  }
}

void save_field_csv(const std::string& path, const ScalarField& field) {
  save(path, [&](std::ostream& os) { write_field_csv(os, field); });
}

void save_kernel_csv(const std::string& path, const KernelMatrix& kernel) {
  save(path, [&](std::ostream& os) { write_kernel_csv(os, kernel); });
}

void save_pgm(const std::string& path, const ScalarField& field) {
  save(path, [&](std::ostream& os) { write_pgm(os, field); });
}

}  // namespace synfocus
