#include "fexray/image_io.hpp"

#include "fexray/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace fexray {

namespace {

template <typename T>
void put(std::ostream& out, T value) {
  static_assert(std::endian::native == std::endian::little, "big-endian hosts are not supported");
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  out.write(bytes, sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  char bytes[sizeof(T)];
  if (!in.read(bytes, sizeof(T))) throw ValidationError("float grid: truncated data");
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

void put_vec(std::ostream& out, const Vec3& v) {
  for (int i = 0; i < 3; ++i) put<double>(out, v[i]);
}

Vec3 get_vec(std::istream& in) {
  Vec3 v;
  for (int i = 0; i < 3; ++i) v[i] = get<double>(in);
  return v;
}

}  // namespace

void write_float_grid(std::ostream& out, const FloatGrid& grid) {
  const Detector& d = grid.detector;
  if (grid.values.size() != d.pixel_count()) throw ValidationError("float grid: size mismatch");
  out.write(kFloatGridMagic, 4);
  put<std::uint32_t>(out, kFloatGridVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(d.nu));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(d.nv));
  put<double>(out, d.pitch);
  put_vec(out, d.origin);
  put_vec(out, d.u);
  put_vec(out, d.v);
  put_vec(out, d.dir);
  for (double v : grid.values) put<double>(out, v);
}

void write_float_grid_file(const std::filesystem::path& path, const FloatGrid& grid) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  write_float_grid(out, grid);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

FloatGrid read_float_grid(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kFloatGridMagic, 4) != 0) {
    throw ValidationError("float grid: bad magic");
  }
  const auto version = get<std::uint32_t>(in);
  if (version != kFloatGridVersion) {
    throw ValidationError("float grid: unsupported version " + std::to_string(version));
  }
  FloatGrid g;
  Detector& d = g.detector;
  const auto nu = get<std::uint32_t>(in);
  const auto nv = get<std::uint32_t>(in);
  if (nu < 1 || nv < 1 || nu > (1u << 20) || nv > (1u << 20)) {
    throw ValidationError("float grid: invalid dimensions");
  }
  d.nu = static_cast<int>(nu);
  d.nv = static_cast<int>(nv);
  d.pitch = get<double>(in);
  if (!(d.pitch > 0.0)) throw ValidationError("float grid: invalid pitch");
  d.origin = get_vec(in);
  d.u = get_vec(in);
  d.v = get_vec(in);
  d.dir = get_vec(in);
  g.values.resize(d.pixel_count());
  for (double& v : g.values) v = get<double>(in);
  if (in.peek() != std::char_traits<char>::eof()) throw ValidationError("float grid: trailing data");
  return g;
}

FloatGrid read_float_grid_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  return read_float_grid(in);
}

std::string write_graymap(const std::vector<double>& values, int nu, int nv, int bits, double lo,
                          double hi) {
  if (bits != 8 && bits != 16) throw ValidationError("graymap bit depth must be 8 or 16");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ValidationError("graymap window must satisfy min < max");
  }
  if (nu < 1 || nv < 1 || values.size() != static_cast<std::size_t>(nu) * nv) {
    throw ValidationError("graymap: size mismatch");
  }
  const int maxval = bits == 8 ? 255 : 65535;
  std::string out = "P5\n" + std::to_string(nu) + " " + std::to_string(nv) + "\n" +
                    std::to_string(maxval) + "\n";
  for (int j = nv - 1; j >= 0; --j) {
    for (int i = 0; i < nu; ++i) {
      const double x = values[static_cast<std::size_t>(j) * nu + i];
      if (!std::isfinite(x)) throw ValidationError("graymap: non-finite pixel value");
      const double s = std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
      // nearbyint rounds half to even in the default rounding mode.
      const auto q = static_cast<unsigned>(std::nearbyint(s * maxval));
      if (bits == 16) out.push_back(static_cast<char>(q >> 8));
      out.push_back(static_cast<char>(q & 0xff));
    }
  }
  return out;
}

std::pair<double, double> default_window(const std::vector<double>& values) {
  double hi = 0.0;
  for (double v : values) hi = std::max(hi, v);
  return {0.0, hi > 0.0 ? hi : 1.0};
}

}  // namespace fexray
