#include "fexray/locate.hpp"
#include "fexray/phantoms.hpp"
#include "fexray/raycast.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include <set>

using namespace fexray;

namespace {

const Aabb kUnitBox{Vec3::Zero(), Vec3::Ones()};

}  // namespace

TEST(RayAabb, AxisAlignedCenterRay) {
  const auto hit = ray_aabb(Ray(Vec3(-1, 0.5, 0.5), Vec3(1, 0, 0)), kUnitBox);
  ASSERT_TRUE(hit);
  EXPECT_DOUBLE_EQ(hit->t_enter, 1.0);
  EXPECT_DOUBLE_EQ(hit->t_exit, 2.0);
}

TEST(RayAabb, RayPassingAboveCornerMisses) {
  // Enters the y slab only after leaving the x slab.
  EXPECT_FALSE(ray_aabb(Ray(Vec3(-1, 0.5, 0.5), Vec3(1, 1, 0)), kUnitBox));
  EXPECT_TRUE(ray_aabb(Ray(Vec3(-1, -0.5, 0.5), Vec3(1, 1, 0)), kUnitBox));
}

TEST(RayAabb, OriginInsideAndBehind) {
  const auto hit = ray_aabb(Ray(Vec3(0.5, 0.5, 0.5), Vec3(0, 0, 1)), kUnitBox);
  ASSERT_TRUE(hit);
  EXPECT_LT(hit->t_enter, 0.0);
  EXPECT_GT(hit->t_exit, 0.0);
  EXPECT_FALSE(ray_aabb(Ray(Vec3(0.5, 0.5, 2), Vec3(0, 0, 1)), kUnitBox));
}

TEST(RayAabb, ParallelToSlabOnItsPlane) {
  // Origin exactly on the x = 0 plane, direction without x component.
  EXPECT_TRUE(ray_aabb(Ray(Vec3(0, 0.5, -1), Vec3(0, 0, 1)), kUnitBox));
  EXPECT_FALSE(ray_aabb(Ray(Vec3(-1e-12, 0.5, -1), Vec3(0, 0, 1)), kUnitBox));
}

TEST(Ray, RejectsZeroDirection) {
  EXPECT_THROW(Ray(Vec3::Zero(), Vec3::Zero()), std::invalid_argument);
  EXPECT_THROW(Ray(Vec3::Zero(), Vec3(std::nan(""), 0, 1)), std::invalid_argument);
}

TEST(RayObb, IdentityAndRotationInvariance) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 2000; ++k) {
    const Ray ray(Vec3(u(rng), u(rng), u(rng)), Vec3(u(rng), u(rng), u(rng)));
    Obb plain{Basis{}, kUnitBox};
    const auto a = ray_aabb(ray, kUnitBox);
    const auto b = ray_obb(ray, plain);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) {
      EXPECT_EQ(a->t_enter, b->t_enter);
      EXPECT_EQ(a->t_exit, b->t_exit);
    }
    // Rotate both box and ray by R.
    const Mat3 r = test::random_rotation(rng);
    Obb rotated{Basis{}, kUnitBox};
    rotated.basis.axes = r.transpose();
    const auto c = ray_obb(Ray(r * ray.origin, r * ray.dir), rotated);
    if (a && c) {
      EXPECT_NEAR(a->t_enter, c->t_enter, 1e-12 * (1 + std::abs(a->t_enter)));
      EXPECT_NEAR(a->t_exit, c->t_exit, 1e-12 * (1 + std::abs(a->t_exit)));
    }
  }
}

TEST(RayObb, AgreesWithDenseSampling) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 300; ++k) {
    Obb obb{Basis{}, Aabb{Vec3(-0.5, -0.3, -0.2), Vec3(0.5, 0.3, 0.2)}};
    obb.basis.axes = test::random_rotation(rng);
    const Ray ray(Vec3(2 * u(rng), 2 * u(rng), 2 * u(rng)), Vec3(u(rng), u(rng), u(rng)));
    const double len = 8.0 / ray.dir.norm();
    bool sampled = false;
    for (int i = 0; i <= 10000 && !sampled; ++i) sampled = obb.contains(ray.at(len * i / 10000));
    const auto hit = ray_obb(ray, obb);
    if (sampled) EXPECT_TRUE(hit);
  }
}

TEST(RayTriangle, CentroidAndParallel) {
  const Triangle tri{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  const auto hit = ray_triangle(Ray(Vec3(1.0 / 3, 1.0 / 3, 1), Vec3(0, 0, -1)), tri);
  ASSERT_TRUE(hit);
  EXPECT_NEAR(hit->u, 1.0 / 3, 1e-15);
  EXPECT_NEAR(hit->v, 1.0 / 3, 1e-15);
  EXPECT_NEAR(hit->t, 1.0, 1e-15);
  EXPECT_FALSE(ray_triangle(Ray(Vec3(-1, 0.2, 0), Vec3(1, 0, 0)), tri));
  EXPECT_FALSE(ray_triangle(Ray(Vec3(0.2, 0.2, 1), Vec3(0, 0, 1)), tri));
}

TEST(RayTriangle, EdgeHitsStrictVersusInclusive) {
  const Triangle tri{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  const Ray on_edge(Vec3(0.5, 0, 1), Vec3(0, 0, -1));
  EXPECT_FALSE(ray_triangle(on_edge, tri, TriangleTest::strict));
  EXPECT_TRUE(ray_triangle(on_edge, tri, TriangleTest::inclusive));
}

TEST(RayTriangle, AgreesWithPlaneOracle) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-1, 1);
  int hits = 0;
  for (int k = 0; k < 20000; ++k) {
    const Triangle tri{Vec3(u(rng), u(rng), u(rng)), Vec3(u(rng), u(rng), u(rng)), Vec3(u(rng), u(rng), u(rng))};
    const Vec3 origin(2 * u(rng), 2 * u(rng), 2 * u(rng));
    const double b1 = 0.65 + 0.9 * u(rng), b2 = 0.65 + 0.9 * u(rng);
    const Ray ray(origin, tri.p + 0.5 * b1 * (tri.q - tri.p) + 0.5 * b2 * (tri.r - tri.p) - origin);
    const Vec3 n = (tri.q - tri.p).cross(tri.r - tri.p);
    const double denom = n.dot(ray.dir);
    const auto hit = ray_triangle(ray, tri);
    if (std::abs(denom) < 1e-6 * n.norm() * ray.dir.norm()) continue;
    const double t = n.dot(tri.p - ray.origin) / denom;
    const Vec3 x = ray.at(t);
    const double a0 = (tri.q - x).cross(tri.r - x).dot(n);
    const double a1 = (tri.r - x).cross(tri.p - x).dot(n);
    const double a2 = (tri.p - x).cross(tri.q - x).dot(n);
    const double margin = 1e-9 * n.squaredNorm();
    const bool inside = a0 > margin && a1 > margin && a2 > margin && t > 1e-9;
    const bool outside = a0 < -margin || a1 < -margin || a2 < -margin || t < -1e-9;
    if (inside) {
      ASSERT_TRUE(hit);
      EXPECT_NEAR(hit->t, t, 1e-9 * (1 + std::abs(t)));
      const Vec3 s = (1 - hit->u - hit->v) * tri.p + hit->u * tri.q + hit->v * tri.r;
      EXPECT_LT((ray.at(hit->t) - s).norm(), 1e-10 * 4);
      ++hits;
    } else if (outside) {
      EXPECT_FALSE(hit);
    }
  }
  EXPECT_GT(hits, 4000);
}

TEST(RayTetEntry, EntryInsideAndMiss) {
  const std::array<Vec3, 4> c{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};
  const auto through = ray_tet_entry(Ray(Vec3(0.2, 0.2, -1), Vec3(0, 0, 1)), c);
  ASSERT_TRUE(through);
  EXPECT_NEAR(*through, 1.0, 1e-15);
  const auto inside = ray_tet_entry(Ray(Vec3(0.2, 0.2, 0.2), Vec3(0, 0, 1)), c);
  ASSERT_TRUE(inside);
  EXPECT_NEAR(*inside, 0.4, 1e-15);
  EXPECT_FALSE(ray_tet_entry(Ray(Vec3(2, 2, -1), Vec3(0, 0, 1)), c));
}

TEST(Traverse, MatchesFlatScanAndCoversTouchedElements) {
  const Phantom ball = generate_ball();
  const ObbTree tree = build_obb_tree(ball.mesh, 4);
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int k = 0; k < 100; ++k) {
    const Vec3 d = Vec3(u(rng), u(rng), u(rng)).normalized();
    const Ray ray(Vec3(u(rng), u(rng), u(rng)) - 3 * d, d);
    const auto a = traverse(tree, ray);
    const auto b = traverse_flat(tree, ray);
    // Child boxes may stick out of their parent, so the flat scan can list
    // extra leaves; the pruned traversal must be a subset.
    ASSERT_LE(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto same = std::find_if(b.begin(), b.end(), [&](const LeafHit& h) { return h.node == a[i].node; });
      ASSERT_NE(same, b.end());
      EXPECT_EQ(same->interval.t_enter, a[i].interval.t_enter);
      EXPECT_EQ(same->interval.t_exit, a[i].interval.t_exit);
      if (i > 0) EXPECT_LE(a[i - 1].interval.t_enter, a[i].interval.t_enter);
    }
    std::set<ElementId> listed;
    for (const auto& h : a)
      for (ElementId e : tree.elements(tree.nodes()[h.node])) listed.insert(e);
    for (int s = 0; s < 300; ++s) {
      const Vec3 p = ray.at(6.0 * s / 300);
      for (ElementId e = 0; e < ball.mesh.element_count(); ++e) {
        const NewtonResult r = solve_local(ball.mesh.geometry(e), p, {});
        if (r.converged() && in_hull(r.xi, 0.0)) EXPECT_TRUE(listed.count(e)) << e;
      }
    }
  }
}

TEST(Traverse, MissAndSingleLeaf) {
  const Mesh tet = test::unit_tet();
  const ObbTree tree = build_obb_tree(tet, 10);
  EXPECT_TRUE(traverse(tree, Ray(Vec3(5, 5, 5), Vec3(0, 0, 1))).empty());
  const auto hits = traverse(tree, Ray(Vec3(0.2, 0.2, -1), Vec3(0, 0, 1)));
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].node, 0);
}
