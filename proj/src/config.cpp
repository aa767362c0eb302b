// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "synfocus/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "synfocus/error.hpp"

namespace synfocus {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

long long parse_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError("invalid value for '" + key + "': " + v);
  return out;
}

std::size_t parse_count(const std::string& key, const std::string& v, long long min) {
  const long long n = parse_int(key, v);
  if (n < min)
    throw ConfigError("invalid value for '" + key + "': " + v + " (must be >= " +
                      std::to_string(min) + ")");
  return static_cast<std::size_t>(n);
}

double parse_real(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || !std::isfinite(x))
    throw ConfigError("invalid value for '" + key + "': " + v);
  return x;
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(key, trim(item)));
  return out;
}

WaveFamily parse_family(const std::string& v) {
  if (v == "plane") return WaveFamily::plane;
  if (v == "xray") return WaveFamily::xray;
  if (v == "pulse") return WaveFamily::pulse;
  if (v == "monochromatic") return WaveFamily::monochromatic;
  throw ConfigError("invalid value for 'family': " + v +
                    " (expected plane, xray, pulse or monochromatic)");
}

}  // namespace

Mode parse_mode(const std::string& name) {
  static const std::map<std::string, Mode> modes{
      {"phantom", Mode::phantom}, {"forward", Mode::forward},   {"kernel", Mode::kernel},
      {"measure", Mode::measure}, {"focus", Mode::focus},       {"endtoend", Mode::endtoend},
      {"validate", Mode::validate}};
  const auto it = modes.find(name);
  if (it == modes.end()) throw ConfigError("unknown mode '" + name + "'");
  return it->second;
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::phantom: return "phantom";
    case Mode::forward: return "forward";
    case Mode::kernel: return "kernel";
    case Mode::measure: return "measure";
    case Mode::focus: return "focus";
    case Mode::endtoend: return "endtoend";
    case Mode::validate: return "validate";
  }
  return "?";
}

std::string to_string(WaveFamily family) {
  switch (family) {
    case WaveFamily::plane: return "plane";
    case WaveFamily::xray: return "xray";
    case WaveFamily::pulse: return "pulse";
    case WaveFamily::monochromatic: return "monochromatic";
  }
  return "?";
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::vector<Disk> disks;
  bool any_disk = false;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");

    if (key == "mode") cfg.mode = parse_mode(value);
    else if (key == "grid") cfg.grid = parse_count(key, value, 2);
    else if (key == "interior") cfg.interior = parse_count(key, value, 2);
    else if (key == "transducers") cfg.transducers = parse_count(key, value, 4);
    else if (key == "radii") cfg.radii = parse_count(key, value, 2);
    else if (key == "frequencies") cfg.frequencies = parse_count(key, value, 0);
    else if (key == "angles") cfg.angles = parse_count(key, value, 1);
    else if (key == "offsets") cfg.offsets = parse_count(key, value, 0);
    else if (key == "oversample") cfg.oversample = parse_count(key, value, 1);
    else if (key == "family") cfg.family = parse_family(value);
    else if (key == "kernel_method") {
      if (value == "bruteforce") cfg.kernel_method = KernelMethod::bruteforce;
      else if (value == "adjoint") cfg.kernel_method = KernelMethod::adjoint;
      else throw ConfigError("invalid value for 'kernel_method': " + value);
    } else if (key == "noise") {
      cfg.noise = parse_real(key, value);
      if (cfg.noise < 0.0) throw ConfigError("invalid value for 'noise': must be >= 0");
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_count(key, value, 0));
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(parse_count(key, value, 0));
    } else if (key == "eps") {
      cfg.eps = parse_real(key, value);
      if (!(cfg.eps > 0.0)) throw ConfigError("invalid value for 'eps': must be > 0");
    } else if (key == "tol") {
      cfg.tol = parse_real(key, value);
      if (!(cfg.tol > 0.0)) throw ConfigError("invalid value for 'tol': must be > 0");
    } else if (key == "aperture_radius") {
      cfg.aperture_radius = parse_real(key, value);
      if (!(cfg.aperture_radius > std::sqrt(0.5)))
        throw ConfigError("invalid value for 'aperture_radius': must enclose the unit square");
    } else if (key == "disk") {
      const auto v = parse_list(key, value);
      if (v.size() != 4) throw ConfigError("invalid value for 'disk': expected x, y, radius, amplitude");
      disks.push_back({{v[0], v[1], 0.0}, v[2], v[3]});
      any_disk = true;
    } else if (key == "kernel_file") {
      cfg.kernel_file = value;
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (any_disk) cfg.disks = std::move(disks);
  validate_config(cfg);
  return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.interior < 2 || cfg.grid % cfg.interior != 0)
    throw ConfigError("invalid value for 'interior': must divide 'grid'");
  if (cfg.mode == Mode::focus &&
      (cfg.family == WaveFamily::pulse || cfg.family == WaveFamily::monochromatic))
    throw ConfigError("invalid value for 'family': " + to_string(cfg.family) +
                      " data cannot be focused on the 2D domain (use plane or xray)");
}

std::vector<std::pair<std::string, std::string>> echo_config(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> e{
      {"mode", to_string(cfg.mode)},
      {"grid", std::to_string(cfg.grid)},
      {"interior", std::to_string(cfg.interior)},
      {"transducers", std::to_string(cfg.transducers)},
      {"radii", std::to_string(cfg.radii)},
      {"frequencies", std::to_string(cfg.frequencies)},
      {"angles", std::to_string(cfg.angles)},
      {"offsets", std::to_string(cfg.offsets)},
      {"oversample", std::to_string(cfg.oversample)},
      {"family", to_string(cfg.family)},
      {"kernel_method", cfg.kernel_method == KernelMethod::bruteforce ? "bruteforce" : "adjoint"},
      {"noise", fmt(cfg.noise)},
      {"seed", std::to_string(cfg.seed)},
      {"threads", std::to_string(cfg.threads)},
      {"eps", fmt(cfg.eps)},
      {"tol", fmt(cfg.tol)},
      {"aperture_radius", fmt(cfg.aperture_radius)},
      {"kernel_file", cfg.kernel_file.empty() ? "none" : cfg.kernel_file},
  };
  for (const Disk& d : cfg.disks)
    e.emplace_back("disk", fmt(d.center[0]) + ", " + fmt(d.center[1]) + ", " + fmt(d.radius) +
                               ", " + fmt(d.amplitude));
  return e;
}

}  // namespace synfocus
