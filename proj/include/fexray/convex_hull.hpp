#pragma once

#include "fexray/pca.hpp"
#include "fexray/types.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace fexray {

struct ConvexHull {
  std::vector<Vec3> vertices;
  /// Outward-oriented (counter-clockwise seen from outside) vertex triples.
  std::vector<std::array<std::uint32_t, 3>> faces;

  std::vector<Triangle> triangles() const;
  double volume() const;
};

/// 3D quickhull. Points within a relative tolerance of a hull plane are
/// treated as lying on it. Throws DegenerateHullError when the input has
/// fewer than four affinely independent points.
ConvexHull convex_hull(std::span<const Vec3> points);

}  // namespace fexray
