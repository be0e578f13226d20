#include "fexray/error.hpp"
#include "fexray/image_io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

using namespace fexray;

namespace {

FloatGrid sample_grid() {
  FloatGrid g;
  g.detector = make_detector_pitch({Vec3(-1, -1, -1), Vec3(1, 1, 1)}, Face::neg_y, 0.3, std::make_pair(3, 2));
  g.values = {0.0, 1.0 / 3.0, -2.5e-300, 1e300, std::nextafter(1.0, 2.0), 7.25};
  return g;
}

std::string bytes_of(const FloatGrid& g) {
  std::ostringstream out;
  write_float_grid(out, g);
  return out.str();
}

std::string pixels(const std::string& pgm, int header_lines = 3) {
  std::size_t pos = 0;
  for (int k = 0; k < header_lines; ++k) pos = pgm.find('\n', pos) + 1;
  return pgm.substr(pos);
}

}  // namespace

TEST(FloatGrid, RoundTripIsExact) {
  const FloatGrid g = sample_grid();
  const std::string bytes = bytes_of(g);
  EXPECT_EQ(bytes.size(), 4 + 3 * 4 + 8 + 12 * 8 + 6 * 8u);
  EXPECT_EQ(bytes.substr(0, 4), "FXRG");
  std::istringstream in(bytes);
  const FloatGrid back = read_float_grid(in);
  EXPECT_EQ(back.detector.nu, 3);
  EXPECT_EQ(back.detector.nv, 2);
  EXPECT_EQ(back.detector.pitch, 0.3);
  EXPECT_EQ(back.detector.origin, g.detector.origin);
  EXPECT_EQ(back.detector.u, g.detector.u);
  EXPECT_EQ(back.detector.v, g.detector.v);
  EXPECT_EQ(back.detector.dir, g.detector.dir);
  ASSERT_EQ(back.values.size(), g.values.size());
  EXPECT_EQ(std::memcmp(back.values.data(), g.values.data(), g.values.size() * sizeof(double)), 0);
  EXPECT_EQ(bytes_of(back), bytes);
}

TEST(FloatGrid, RejectsCorruptInput) {
  const std::string bytes = bytes_of(sample_grid());
  const auto fails = [](std::string b) {
    std::istringstream in(b);
    EXPECT_THROW(read_float_grid(in), ValidationError);
  };
  std::string bad = bytes;
  bad[0] = 'G';
  fails(bad);
  bad = bytes;
  bad[4] = 2;
  fails(bad);
  fails(bytes.substr(0, bytes.size() - 1));
  fails(bytes.substr(0, 10));
  fails(bytes + "x");
  bad = bytes;
  bad[8] = 0;  // nu = 0
  fails(bad);
  EXPECT_THROW(read_float_grid_file("/nonexistent/grid.fxg"), ValidationError);
}

TEST(FloatGrid, SizeMismatchOnWrite) {
  FloatGrid g = sample_grid();
  g.values.pop_back();
  std::ostringstream out;
  EXPECT_THROW(write_float_grid(out, g), ValidationError);
}

TEST(Graymap, EightBitRounding) {
  EXPECT_EQ(write_graymap({2.0}, 1, 1, 8, 0.0, 2.0), std::string("P5\n1 1\n255\n\xff", 12));
  EXPECT_EQ(pixels(write_graymap({0.0}, 1, 1, 8, 0.0, 2.0)), std::string(1, '\0'));
  EXPECT_EQ(pixels(write_graymap({1.0}, 1, 1, 8, 0.0, 2.0)), std::string(1, '\x80'));
  EXPECT_EQ(pixels(write_graymap({-3.0, 9.0}, 2, 1, 8, 0.0, 1.0)), std::string("\x00\xff", 2));
}

TEST(Graymap, SixteenBitBigEndian) {
  const std::string p = write_graymap({0.0, 1.0, 0.5}, 3, 1, 16, 0.0, 1.0);
  EXPECT_EQ(p.substr(0, 13), "P5\n3 1\n65535\n");
  EXPECT_EQ(pixels(p), std::string("\x00\x00\xff\xff\x80\x00", 6));
}

TEST(Graymap, TopRowIsLargestV) {
  const std::string p = pixels(write_graymap({0.0, 0.0, 1.0, 1.0}, 2, 2, 8, 0.0, 1.0));
  EXPECT_EQ(p, std::string("\xff\xff\x00\x00", 4));
}

TEST(Graymap, InvalidArguments) {
  EXPECT_THROW(write_graymap({0.0}, 1, 1, 8, 1.0, 1.0), ValidationError);
  EXPECT_THROW(write_graymap({0.0}, 1, 1, 12, 0.0, 1.0), ValidationError);
  EXPECT_THROW(write_graymap({0.0}, 2, 1, 8, 0.0, 1.0), ValidationError);
  EXPECT_THROW(write_graymap({std::nan("")}, 1, 1, 8, 0.0, 1.0), ValidationError);
  EXPECT_THROW(write_graymap({0.0}, 1, 1, 8, 0.0, std::numeric_limits<double>::infinity()),
               ValidationError);
}

TEST(Graymap, Deterministic) {
  const std::vector<double> v{0.1, 0.7, 1.3, 1.99, 0.0, 2.0};
  EXPECT_EQ(write_graymap(v, 3, 2, 8, 0, 2), write_graymap(v, 3, 2, 8, 0, 2));
  EXPECT_EQ(default_window(v), std::make_pair(0.0, 2.0));
  EXPECT_EQ(default_window({0.0, -1.0}), std::make_pair(0.0, 1.0));
}
