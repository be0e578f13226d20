#include "fexray/detector.hpp"
#include "fexray/error.hpp"

#include <gtest/gtest.h>

using namespace fexray;

TEST(Detector, UnitCubeFourRaysPerCm2) {
  const Detector d = make_detector(Aabb{Vec3::Zero(), Vec3::Ones()}, Face::pos_z, 4.0);
  EXPECT_EQ(d.nu, 2);
  EXPECT_EQ(d.nv, 2);
  EXPECT_DOUBLE_EQ(d.pitch, 0.5);
  EXPECT_EQ(d.dir, Vec3(0, 0, -1));
  EXPECT_LT((d.pixel_center(0, 0) - Vec3(0.25, 0.25, 1)).norm(), 1e-15);
  EXPECT_LT((d.pixel_center(1, 1) - Vec3(0.75, 0.75, 1)).norm(), 1e-15);
}

TEST(Detector, DenseRayCountCoversFace) {
  const Detector d = make_detector(Aabb{Vec3::Constant(-1), Vec3::Constant(1)}, Face::pos_z, 23668);
  EXPECT_GE(d.pixel_count(), 94864u);
}

TEST(Detector, ZeroThicknessBox) {
  const Detector d = make_detector(Aabb{Vec3(0, 0, 0), Vec3(1, 1, 0)}, Face::pos_z, 100);
  EXPECT_EQ(d.nu, 10);
  const Detector side = make_detector(Aabb{Vec3(0, 0, 0), Vec3(1, 1, 0)}, Face::pos_x, 100);
  EXPECT_EQ(side.nv, 1);
}

TEST(Detector, FramesAreOrthonormalAndCoverTheFace) {
  const Aabb box{Vec3(-1, -2, -3), Vec3(2, 1, 0.5)};
  for (const char* name : {"+x", "-x", "+y", "-y", "+z", "-z"}) {
    const Face f = *parse_face(name);
    EXPECT_EQ(face_name(f), name);
    const Detector d = make_detector(box, f, 50);
    EXPECT_NEAR(d.u.dot(d.v), 0.0, 1e-12);
    EXPECT_NEAR(d.u.dot(d.dir), 0.0, 1e-12);
    EXPECT_NEAR(d.v.dot(d.dir), 0.0, 1e-12);
    EXPECT_NEAR(d.dir.norm(), 1.0, 1e-12);
    // Rays start on the face and point into the box.
    const Vec3 c = d.pixel_center(d.nu / 2, d.nv / 2);
    EXPECT_TRUE(box.contains(c + 1e-9 * d.dir));
    // Grid extent covers the face.
    const Vec3 lo = d.origin, hi = d.origin + d.nu * d.pitch * d.u + d.nv * d.pitch * d.v;
    for (int a = 0; a < 3; ++a) {
      if (std::abs(d.dir[a]) > 0.5) continue;
      EXPECT_LE(std::min(lo[a], hi[a]), box.min[a] + 1e-12);
      EXPECT_GE(std::max(lo[a], hi[a]), box.max[a] - 1e-12);
    }
  }
}

TEST(Detector, DefaultFaceAndErrors) {
  EXPECT_EQ(default_face(Aabb{Vec3::Zero(), Vec3(1, 3, 2)}), Face::pos_y);
  EXPECT_EQ(default_face(Aabb{Vec3::Zero(), Vec3(2, 2, 2)}), Face::pos_x);
  EXPECT_FALSE(parse_face("z"));
  EXPECT_THROW(make_detector(Aabb{}, Face::pos_z, 4), ValidationError);
  EXPECT_THROW(make_detector(Aabb{Vec3::Zero(), Vec3::Ones()}, Face::pos_z, 0), ValidationError);
  EXPECT_THROW(make_detector_pitch(Aabb{Vec3::Zero(), Vec3::Ones()}, Face::pos_z, 0.1, std::pair{0, 3}),
               ValidationError);
  const Detector g = make_detector_pitch(Aabb{Vec3::Zero(), Vec3::Ones()}, Face::pos_z, 0.1, std::pair{3, 4});
  EXPECT_EQ(g.nu, 3);
  EXPECT_EQ(g.nv, 4);
}
