#include "fexray/detector.hpp"

#include "fexray/error.hpp"

#include <array>
#include <cmath>

namespace fexray {

namespace {

struct FaceFrame {
  int axis;     // normal axis
  double sign;  // +1 for the max face
  int u_axis;
  int v_axis;
};

FaceFrame frame_of(Face face) {
  switch (face) {
    case Face::pos_x: return {0, 1.0, 1, 2};
    case Face::neg_x: return {0, -1.0, 2, 1};
    case Face::pos_y: return {1, 1.0, 2, 0};
    case Face::neg_y: return {1, -1.0, 0, 2};
    case Face::pos_z: return {2, 1.0, 0, 1};
    case Face::neg_z: return {2, -1.0, 1, 0};
  }
  throw ValidationError("invalid face");
}

constexpr std::array<std::pair<std::string_view, Face>, 6> kFaceNames{{
    {"+x", Face::pos_x},
    {"-x", Face::neg_x},
    {"+y", Face::pos_y},
    {"-y", Face::neg_y},
    {"+z", Face::pos_z},
    {"-z", Face::neg_z},
}};

int pixels_for(double extent, double pitch) {
  const double n = std::ceil(extent / pitch - 1e-9);
  if (!(n < 1e8)) throw ValidationError("detector grid too large");
  return std::max(1, static_cast<int>(n));
}

}  // namespace

std::optional<Face> parse_face(std::string_view text) {
  for (const auto& [name, face] : kFaceNames) {
    if (name == text) return face;
  }
  return std::nullopt;
}

std::string_view face_name(Face face) {
  for (const auto& [name, f] : kFaceNames) {
    if (f == face) return name;
  }
  return "?";
}

Face default_face(const Aabb& box) {
  const Vec3 e = box.extent();
  int axis = 0;
  for (int i = 1; i < 3; ++i) {
    if (e[i] > e[axis]) axis = i;
  }
  return axis == 0 ? Face::pos_x : axis == 1 ? Face::pos_y : Face::pos_z;
}

Aabb model_box(const Mesh& mesh) {
  Aabb box;
  for (ElementId e = 0; e < mesh.element_count(); ++e) {
    const BoundingPoints pts = mesh.bounding_points(e);
    for (Eigen::Index k = 0; k < pts.cols(); ++k) box.extend(pts.col(k));
  }
  return box;
}

Detector make_detector_pitch(const Aabb& box, Face face, double pitch,
                             std::optional<std::pair<int, int>> grid) {
  if (box.is_empty()) throw ValidationError("model box is empty");
  if (!(pitch > 0.0) || !std::isfinite(pitch)) throw ValidationError("pixel pitch must be positive");
  const FaceFrame f = frame_of(face);

  Detector d;
  d.pitch = pitch;
  d.u = Vec3::Unit(f.u_axis);
  d.v = Vec3::Unit(f.v_axis);
  d.dir = -f.sign * Vec3::Unit(f.axis);
  if (grid) {
    if (grid->first < 1 || grid->second < 1) throw ValidationError("detector grid must be at least 1x1");
    d.nu = grid->first;
    d.nv = grid->second;
  } else {
    d.nu = pixels_for(box.extent()[f.u_axis], pitch);
    d.nv = pixels_for(box.extent()[f.v_axis], pitch);
  }

  Vec3 center = box.center();
  center[f.axis] = f.sign > 0 ? box.max[f.axis] : box.min[f.axis];
  d.origin = center - (0.5 * d.nu * pitch) * d.u - (0.5 * d.nv * pitch) * d.v;
  return d;
}

Detector make_detector(const Aabb& box, Face face, double rays_per_cm2) {
  if (!(rays_per_cm2 > 0.0) || !std::isfinite(rays_per_cm2)) {
    throw ValidationError("rays_per_cm2 must be positive");
  }
  return make_detector_pitch(box, face, 1.0 / std::sqrt(rays_per_cm2));
}

}  // namespace fexray
