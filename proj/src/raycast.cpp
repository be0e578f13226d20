#include "fexray/raycast.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fexray {

Ray::Ray(const Vec3& o, const Vec3& d) : origin(o), dir(d) {
  if (!d.allFinite() || d.isZero(0.0)) throw std::invalid_argument("ray direction must be nonzero");
  inv_dir = d.cwiseInverse();
}

std::optional<HitInterval> ray_aabb(const Ray& ray, const Aabb& box) {
  double t_enter = -std::numeric_limits<double>::infinity();
  double t_exit = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    if (ray.dir[i] == 0.0) {
      // Parallel to this slab: (bound - o) * inf would give NaN on the plane.
      if (ray.origin[i] < box.min[i] || ray.origin[i] > box.max[i]) return std::nullopt;
      continue;
    }
    const double t0 = (box.min[i] - ray.origin[i]) * ray.inv_dir[i];
    const double t1 = (box.max[i] - ray.origin[i]) * ray.inv_dir[i];
    t_enter = std::max(t_enter, std::min(t0, t1));
    t_exit = std::min(t_exit, std::max(t0, t1));
  }
  if (t_enter > t_exit || t_exit < 0.0) return std::nullopt;
  return HitInterval{t_enter, t_exit};
}

std::optional<HitInterval> ray_obb(const Ray& ray, const Obb& obb) {
  const Ray local(obb.basis.to_local(ray.origin), obb.basis.to_local(ray.dir));
  return ray_aabb(local, obb.box);
}

std::optional<TriangleHit> ray_triangle(const Ray& ray, const Triangle& tri, TriangleTest test) {
  const Vec3 e1 = tri.q - tri.p;
  const Vec3 e2 = tri.r - tri.p;
  const Vec3 pvec = ray.dir.cross(e2);
  const double det = pvec.dot(e1);
  if (std::abs(det) < 1e-14 * ray.dir.norm() * e1.norm() * e2.norm()) return std::nullopt;
  const double inv = 1.0 / det;
  const Vec3 tvec = ray.origin - tri.p;
  const double u = pvec.dot(tvec) * inv;
  const Vec3 qvec = tvec.cross(e1);
  const double v = qvec.dot(ray.dir) * inv;
  const double t = qvec.dot(e2) * inv;
  if (test == TriangleTest::strict) {
    if (u > 0.0 && v > 0.0 && u + v <= 1.0 && t > 0.0) return TriangleHit{t, u, v};
    return std::nullopt;
  }
  constexpr double tol = kInclusiveTolerance;
  if (u >= -tol && v >= -tol && u + v <= 1.0 + tol && t >= 0.0) return TriangleHit{t, u, v};
  return std::nullopt;
}

std::optional<double> ray_tet_entry(const Ray& ray, const std::array<Vec3, 4>& corners) {
  std::optional<double> best;
  static constexpr std::array<std::array<int, 3>, 4> faces{{{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}}};
  for (const auto& f : faces) {
    const auto hit =
        ray_triangle(ray, {corners[f[0]], corners[f[1]], corners[f[2]]}, TriangleTest::inclusive);
    if (hit && (!best || hit->t < *best)) best = hit->t;
  }
  return best;
}

namespace {

void sort_hits(std::vector<LeafHit>& hits) {
  std::sort(hits.begin(), hits.end(), [](const LeafHit& a, const LeafHit& b) {
    if (a.interval.t_enter != b.interval.t_enter) return a.interval.t_enter < b.interval.t_enter;
    return a.node < b.node;
  });
}

}  // namespace

std::vector<LeafHit> traverse(const ObbTree& tree, const Ray& ray) {
  std::vector<LeafHit> hits;
  if (tree.empty()) return hits;
  const auto nodes = tree.nodes();
  std::vector<int> stack;
  stack.reserve(64);
  stack.push_back(0);
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const auto hit = ray_obb(ray, nodes[id].obb);
    if (!hit) continue;
    if (nodes[id].is_leaf()) {
      hits.push_back({id, *hit});
    } else {
      stack.push_back(nodes[id].right);
      stack.push_back(nodes[id].left);
    }
  }
  sort_hits(hits);
  return hits;
}

std::vector<LeafHit> traverse_flat(const ObbTree& tree, const Ray& ray) {
  std::vector<LeafHit> hits;
  const auto nodes = tree.nodes();
  for (int id = 0; id < static_cast<int>(nodes.size()); ++id) {
    if (!nodes[id].is_leaf()) continue;
    if (const auto hit = ray_obb(ray, nodes[id].obb)) hits.push_back({id, *hit});
  }
  sort_hits(hits);
  return hits;
}

}  // namespace fexray
