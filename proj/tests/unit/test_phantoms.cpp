#include "fexray/error.hpp"
#include "fexray/phantoms.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <set>

using namespace fexray;

namespace {

std::set<NodeId> boundary_nodes(const Mesh& m) {
  std::set<NodeId> ids;
  for (const auto& f : boundary_faces(m)) {
    const auto el = m.element(f.element);
    for (int k : kTetFaceNodes[f.local_face]) ids.insert(el[k]);
  }
  return ids;
}

}  // namespace

TEST(Ball, DefaultMeshVolumeAndSurface) {
  const Phantom p = generate_ball();
  EXPECT_EQ(p.mesh.element_count(), 48u);
  EXPECT_EQ(p.mesh.order(), ElementOrder::quadratic);
  const double exact = 4.0 / 3.0 * std::numbers::pi;
  EXPECT_NEAR(mesh_volume(p.mesh) / exact, 1.0, 0.02);
  for (NodeId id : boundary_nodes(p.mesh)) EXPECT_NEAR(p.mesh.node(id).norm(), 1.0, 1e-10);
  for (double v : p.field.values()) EXPECT_EQ(v, 1.0);
}

TEST(Ball, RefinedVolume) {
  const Phantom p = generate_ball({1.0, 750, 1.0});
  EXPECT_GE(p.mesh.element_count(), 400u);
  EXPECT_NEAR(mesh_volume(p.mesh) / (4.0 / 3.0 * std::numbers::pi), 1.0, 0.002);
}

TEST(Ball, ScaledRadiusAndDensity) {
  const Phantom p = generate_ball({2.5, 50, 1.8});
  for (NodeId id : boundary_nodes(p.mesh)) EXPECT_NEAR(p.mesh.node(id).norm(), 2.5, 1e-10);
  for (double v : p.field.values()) EXPECT_EQ(v, 1.8);
}

TEST(Ball, ClosedSurface) {
  const Phantom p = generate_ball();
  std::map<std::pair<NodeId, NodeId>, int> edges;
  for (const auto& f : boundary_faces(p.mesh))
    for (int k = 0; k < 3; ++k) ++edges[{f.corners[k], f.corners[(k + 1) % 3]}];
  for (const auto& [e, n] : edges) {
    EXPECT_EQ(n, 1);
    EXPECT_EQ(edges.count({e.second, e.first}), 1u);
  }
}

TEST(Ball, InvalidSpecs) {
  EXPECT_THROW(generate_ball({0.0, 50, 1.0}), ValidationError);
  EXPECT_THROW(generate_ball({1.0, 0, 1.0}), ValidationError);
  EXPECT_THROW(generate_ball({1.0, 100'000'000, 1.0}), ValidationError);
}

TEST(Cylinder, DefaultMesh) {
  const CylinderSpec spec;
  const Phantom p = generate_cylinder(spec);
  EXPECT_EQ(cylinder_resolution(spec), std::make_pair(11, 34));
  EXPECT_EQ(p.mesh.element_count(), 2142u);
  EXPECT_NEAR(mesh_volume(p.mesh) / (std::numbers::pi * 0.1), 1.0, 0.005);
}

TEST(Cylinder, NodalDensities) {
  const Phantom p = generate_cylinder();
  int axis = 0, rim = 0;
  for (std::size_t i = 0; i < p.mesh.node_count(); ++i) {
    const Vec3& x = p.mesh.node(static_cast<NodeId>(i));
    const double s = std::hypot(x.x(), x.y());
    if (s < 1e-12) {
      EXPECT_DOUBLE_EQ(p.field[static_cast<NodeId>(i)], 1.0);
      ++axis;
    }
    if (std::abs(s - 1.0) < 1e-12) {
      EXPECT_NEAR(p.field[static_cast<NodeId>(i)], 1.0, 1e-12);
      ++rim;
    }
    if (std::abs(s - 0.5) < 1e-12) {
      EXPECT_NEAR(p.field[static_cast<NodeId>(i)], 2.0, 1e-12);
    }
  }
  EXPECT_GT(axis, 0);
  EXPECT_GT(rim, 0);
}

TEST(Cylinder, LateralBoundaryOnSurface) {
  const Phantom p = generate_cylinder();
  for (NodeId id : boundary_nodes(p.mesh)) {
    const Vec3& x = p.mesh.node(id);
    const bool cap = std::abs(x.z()) < 1e-12 || std::abs(x.z() - 0.1) < 1e-12;
    if (!cap) EXPECT_NEAR(std::hypot(x.x(), x.y()), 1.0, 1e-12);
  }
}

// The radial profile contains sqrt(x^2 + y^2) and is only approximated.
TEST(Cylinder, InterpolatedProfileError) {
  const CylinderSpec spec;
  const Phantom p = generate_cylinder(spec);
  std::mt19937_64 rng(71);
  double worst = 0;
  for (int k = 0; k < 20000; ++k) {
    const ElementId e = rng() % p.mesh.element_count();
    const LocalCoords xi = test::random_local(rng);
    const Vec3 x = local_to_global(p.mesh, e, xi);
    worst = std::max(worst, std::abs(interpolate(p.field, p.mesh, e, xi) - spec.density(std::hypot(x.x(), x.y()))));
  }
  EXPECT_LT(worst, 2e-3);
}

TEST(Cylinder, LayersAndInvalidSpecs) {
  CylinderSpec spec;
  spec.layers = 3;
  spec.target_elements = 3000;
  const Phantom p = generate_cylinder(spec);
  const auto [rings, m] = cylinder_resolution(spec);
  EXPECT_EQ(p.mesh.element_count(), static_cast<std::size_t>(3 * 3 * m * (2 * rings - 1)));
  EXPECT_NEAR(mesh_volume(p.mesh) / (std::numbers::pi * 0.1), 1.0, 0.01);
  CylinderSpec bad;
  bad.height = 0;
  EXPECT_THROW(generate_cylinder(bad), ValidationError);
  bad = {};
  bad.target_elements = 2;
  EXPECT_THROW(generate_cylinder(bad), ValidationError);
}

TEST(Oracles, BallExamples) {
  const BallSpec s;
  const Vec3 d(0, 0, -1);
  EXPECT_DOUBLE_EQ(ball_projection_oracle(Vec3(0, 0, 3), d, s), 2.0);
  EXPECT_EQ(ball_projection_oracle(Vec3(1, 0, 3), d, s), 0.0);
  EXPECT_NEAR(ball_projection_oracle(Vec3(0.6, 0, 3), d, s), 1.6, 1e-15);
}

TEST(Oracles, CylinderExamples) {
  const CylinderSpec s;
  EXPECT_NEAR(cylinder_projection_oracle(Vec3(0.5, 0, 0.1), s), 0.2, 1e-15);
  EXPECT_NEAR(cylinder_projection_oracle(Vec3(0, 1, 0.1), s), 0.1, 1e-15);
  EXPECT_EQ(cylinder_projection_oracle(Vec3(1.01, 0, 0.1), s), 0.0);
}

TEST(Oracles, RotationSymmetric) {
  std::mt19937_64 rng(72);
  std::uniform_real_distribution<double> u(0, 1.2), ang(0, 2 * std::numbers::pi);
  const BallSpec b;
  const CylinderSpec c;
  for (int k = 0; k < 1000; ++k) {
    const double rho = u(rng), phi = ang(rng);
    const Vec3 at(rho * std::cos(phi), rho * std::sin(phi), 0.1);
    EXPECT_NEAR(cylinder_projection_oracle(at, c), cylinder_projection_oracle(Vec3(rho, 0, 0.1), c), 1e-14);
    const Mat3 r = test::random_rotation(rng);
    const Vec3 d = r * Vec3(0, 0, -1);
    const Vec3 center = r * Vec3(rho, 0, 5);
    EXPECT_NEAR(ball_projection_oracle(center, d, b), ball_projection_oracle(Vec3(rho, 0, 5), Vec3(0, 0, -1), b), 1e-12);
  }
}
