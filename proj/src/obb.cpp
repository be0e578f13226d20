#include "fexray/obb.hpp"

#include <stdexcept>

namespace fexray {

Aabb Aabb::from_points(std::span<const Vec3> points) {
  Aabb box;
  for (const Vec3& p : points) box.extend(p);
  return box;
}

std::array<Vec3, 8> Obb::corners() const {
  std::array<Vec3, 8> c;
  for (int i = 0; i < 8; ++i) {
    const Vec3 local((i & 1) ? box.max.x() : box.min.x(), (i & 2) ? box.max.y() : box.min.y(),
                     (i & 4) ? box.max.z() : box.min.z());
    c[i] = basis.to_global(local);
  }
  return c;
}

Obb fit_obb(std::span<const Vec3> points, const Basis& basis, bool inflate) {
  if (points.empty()) throw std::invalid_argument("fit_obb: empty point set");
  Obb obb{basis, {}};
  double magnitude = 0.0;
  for (const Vec3& p : points) {
    obb.box.extend(basis.to_local(p));
    magnitude = std::max(magnitude, p.cwiseAbs().maxCoeff());
  }
  if (inflate) obb.box.inflate(kObbInflation * obb.box.diagonal() + 1e-13 * magnitude);
  return obb;
}

}  // namespace fexray
