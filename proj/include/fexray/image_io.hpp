#pragma once

#include "fexray/detector.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace fexray {

/// Lossless image container. Layout (little-endian):
///   "FXRG", u32 version = 1, u32 nu, u32 nv, f64 pitch,
///   f64[3] origin, f64[3] u, f64[3] v, f64[3] dir,
///   f64[nu * nv] values, row-major with u fastest.
struct FloatGrid {
  Detector detector;
  std::vector<double> values;
};

inline constexpr char kFloatGridMagic[4] = {'F', 'X', 'R', 'G'};
inline constexpr std::uint32_t kFloatGridVersion = 1;

void write_float_grid(std::ostream& out, const FloatGrid& grid);
void write_float_grid_file(const std::filesystem::path& path, const FloatGrid& grid);
/// Throws ValidationError on a bad magic, version, size or truncated payload.
FloatGrid read_float_grid(std::istream& in);
FloatGrid read_float_grid_file(const std::filesystem::path& path);

/// Binary PGM (P5). Values are mapped linearly from [lo, hi] to [0, maxval],
/// clamped, and rounded half to even; 16-bit samples are big-endian. The top
/// row of the file is the detector row with the largest v. Throws
/// ValidationError unless lo < hi (both finite) and bits is 8 or 16.
std::string write_graymap(const std::vector<double>& values, int nu, int nv, int bits, double lo,
                          double hi);

/// [0, max value], or [0, 1] for an image without positive values.
std::pair<double, double> default_window(const std::vector<double>& values);

}  // namespace fexray
