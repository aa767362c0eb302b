// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <ostream>

#include "synfocus/field_io.hpp"
#include "synfocus/wavegen.hpp"

namespace synfocus {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_list(std::ostream& os, const char* name, const std::vector<double>& v) {
  os << "# " << name << ": ";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << fmt(v[i]);
  os << '\n';
}

void write_array(std::ostream& os, const TransducerArray& array) {
  os << "# aperture: dim=" << array.dim() << " radius=" << fmt(array.radius())
     << " sound_speed=" << fmt(array.sound_speed()) << " transducers=" << array.size() << '\n';
  for (std::size_t i = 0; i < array.size(); ++i) {
    const Vec3& z = array.positions()[i];
    os << "# transducer: " << i << ',' << fmt(z[0]) << ',' << fmt(z[1]) << ',' << fmt(z[2]) << ','
       << fmt(array.weights()[i]) << '\n';
  }
}

}  // namespace

void write_csv(std::ostream& os, const SphericalMeanData& d) {
  os << "# spherical_means: transducers=" << d.array.size() << " radii=" << d.radii.size()
     << " electrodes=" << d.n_electrodes << '\n';
  write_array(os, d.array);
  write_list(os, "radii", d.radii);
  os << "# columns: transducer,radius_index,value per electrode\n";
  for (std::size_t i = 0; i < d.array.size(); ++i)
    for (std::size_t k = 0; k < d.radii.size(); ++k) {
      os << i << ',' << k;
      for (std::size_t j = 0; j < d.n_electrodes; ++j) os << ',' << fmt(d.at(i, k, j));
      os << '\n';
    }
}

void write_csv(std::ostream& os, const MonochromaticData& d) {
  os << "# monochromatic: transducers=" << d.array.size()
     << " frequencies=" << d.frequencies.size() << " electrodes=" << d.n_electrodes << '\n';
  write_array(os, d.array);
  write_list(os, "frequencies", d.frequencies);
  os << "# columns: transducer,frequency_index,(re,im) per electrode\n";
  for (std::size_t i = 0; i < d.array.size(); ++i)
    for (std::size_t m = 0; m < d.frequencies.size(); ++m) {
      os << i << ',' << m;
      for (std::size_t j = 0; j < d.n_electrodes; ++j) {
        const Complex v = d.at(i, m, j);
        os << ',' << fmt(v.real()) << ',' << fmt(v.imag());
      }
      os << '\n';
    }
}

void write_csv(std::ostream& os, const FourierData& d) {
  os << "# fourier: samples=" << d.kgrid.size() << " electrodes=" << d.n_electrodes << '\n';
  os << "# kgrid: " << format_grid(d.kgrid) << '\n';
  os << "# x_origin: " << fmt(d.x_origin[0]) << ',' << fmt(d.x_origin[1]) << ','
     << fmt(d.x_origin[2]) << '\n';
  os << "# columns: k_index,k vector,(re,im) per electrode\n";
  for (std::size_t q = 0; q < d.kgrid.size(); ++q) {
    const Vec3 k = d.kgrid.center(q);
    os << q;
    for (int a = 0; a < d.kgrid.dim(); ++a) os << ',' << fmt(k[a]);
    for (std::size_t j = 0; j < d.n_electrodes; ++j) {
      const Complex v = d.at(q, j);
      os << ',' << fmt(v.real()) << ',' << fmt(v.imag());
    }
    os << '\n';
  }
}

void write_csv(std::ostream& os, const Sinogram& d) {
  os << "# sinogram: angles=" << d.angles.size() << " offsets=" << d.offsets.size()
     << " electrodes=" << d.n_electrodes << '\n';
  write_list(os, "angles", d.angles);
  write_list(os, "offsets", d.offsets);
  os << "# columns: angle_index,offset_index,value per electrode\n";
  for (std::size_t a = 0; a < d.angles.size(); ++a)
    for (std::size_t s = 0; s < d.offsets.size(); ++s) {
      os << a << ',' << s;
      for (std::size_t j = 0; j < d.n_electrodes; ++j) os << ',' << fmt(d.at(a, s, j));
      os << '\n';
    }
}

void write_csv(std::ostream& os, const WaveData& data) {
  std::visit([&](const auto& d) { write_csv(os, d); }, data);
}

}  // namespace synfocus
