#pragma once

#include "fexray/mesh.hpp"
#include "fexray/obb.hpp"
#include "fexray/raycast.hpp"
#include "fexray/types.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace fexray {

enum class Face { pos_x, neg_x, pos_y, neg_y, pos_z, neg_z };

/// "+x", "-x", ..., "-z".
std::optional<Face> parse_face(std::string_view text);
std::string_view face_name(Face face);

/// + face of the longest box axis (lowest axis on ties).
Face default_face(const Aabb& box);

/// Axis-aligned box of every element's bounding points.
Aabb model_box(const Mesh& mesh);

/// Orthographic detector: pixel (i, j) is centered at
/// origin + (i + 1/2) pitch u + (j + 1/2) pitch v and emits one ray along dir.
/// Images are stored row-major with i fastest.
struct Detector {
  Vec3 origin = Vec3::Zero();
  Vec3 u = Vec3::UnitX();
  Vec3 v = Vec3::UnitY();
  Vec3 dir = -Vec3::UnitZ();
  int nu = 0;
  int nv = 0;
  double pitch = 1.0;

  std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(nu) * nv; }
  Vec3 pixel_center(int i, int j) const {
    return origin + ((i + 0.5) * pitch) * u + ((j + 0.5) * pitch) * v;
  }
  Ray ray(int i, int j) const { return Ray(pixel_center(i, j), dir); }
};

/// Grid in the plane of `face`, centered on it, rays along the inward normal.
/// Without an explicit grid, each side gets ceil(extent / pitch) pixels (at
/// least one) so the face is covered. Throws ValidationError for an empty box,
/// a non-positive pitch or a non-positive grid size.
Detector make_detector_pitch(const Aabb& box, Face face, double pitch,
                             std::optional<std::pair<int, int>> grid = std::nullopt);

/// Pitch 1 / sqrt(rays_per_cm2).
Detector make_detector(const Aabb& box, Face face, double rays_per_cm2);

}  // namespace fexray
