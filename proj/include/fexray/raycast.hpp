#pragma once

#include "fexray/obb.hpp"
#include "fexray/obb_tree.hpp"
#include "fexray/pca.hpp"
#include "fexray/types.hpp"

#include <array>
#include <optional>
#include <vector>

namespace fexray {

/// R(t) = origin + t * dir. inv_dir is the componentwise reciprocal
/// (+-infinity for zero components).
struct Ray {
  Vec3 origin;
  Vec3 dir;
  Vec3 inv_dir;

  Ray() = default;
  /// Throws std::invalid_argument for a zero or non-finite direction.
  Ray(const Vec3& o, const Vec3& d);

  Vec3 at(double t) const { return origin + t * dir; }
};

struct HitInterval {
  double t_enter;
  double t_exit;
};

/// Slab test. Returns the parameter interval inside the box when the largest
/// slab entry does not exceed the smallest slab exit and the exit is not
/// behind the origin. t_enter may be negative when the origin is inside.
std::optional<HitInterval> ray_aabb(const Ray& ray, const Aabb& box);

/// Slab test in the frame of the box; t values are valid in the world frame.
std::optional<HitInterval> ray_obb(const Ray& ray, const Obb& obb);

struct TriangleHit {
  double t, u, v;
};

enum class TriangleTest {
  strict,     ///< u > 0, v > 0, u + v <= 1, t > 0
  inclusive,  ///< edges and vertices count, within kInclusiveTolerance; t >= 0
};

inline constexpr double kInclusiveTolerance = 1e-12;

/// Moller-Trumbore: solves o + t d = (1-u-v) p + u q + v r by Cramer's rule.
/// Rays parallel to the plane (|det| < 1e-14 |d||E1||E2|) never hit.
std::optional<TriangleHit> ray_triangle(const Ray& ray, const Triangle& tri,
                                        TriangleTest test = TriangleTest::strict);

/// Smallest non-negative face-hit parameter of a tetrahedron, using the
/// inclusive triangle test so rays through shared edges are not lost.
std::optional<double> ray_tet_entry(const Ray& ray, const std::array<Vec3, 4>& corners);

struct LeafHit {
  int node;  ///< index into ObbTree::nodes()
  HitInterval interval;
};

/// Leaves whose box the ray hits, ascending by t_enter (ties by node index).
/// Subtrees are only descended when their box is hit.
std::vector<LeafHit> traverse(const ObbTree& tree, const Ray& ray);

/// Same leaves by testing every leaf box; reference for traverse().
std::vector<LeafHit> traverse_flat(const ObbTree& tree, const Ray& ray);

}  // namespace fexray
