#pragma once

#include "fexray/types.hpp"

#include <array>
#include <limits>
#include <span>

namespace fexray {

/// Axis-aligned box (min, max) in some frame. Default-constructed boxes are empty.
struct Aabb {
  Vec3 min = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 max = Vec3::Constant(-std::numeric_limits<double>::infinity());

  static Aabb from_points(std::span<const Vec3> points);

  bool is_empty() const { return (min.array() > max.array()).any(); }
  void extend(const Vec3& p) {
    min = min.cwiseMin(p);
    max = max.cwiseMax(p);
  }
  void inflate(double margin) {
    min.array() -= margin;
    max.array() += margin;
  }
  Vec3 extent() const { return max - min; }
  Vec3 center() const { return 0.5 * (min + max); }
  double diagonal() const { return extent().norm(); }
  double volume() const { return extent().prod(); }
  bool contains(const Vec3& p) const {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }
};

/// Orthonormal frame; rows of `axes` are the unit axes (right-handed).
/// `origin` is the weighted center the frame was fitted about; it does not
/// enter the change of basis, which is a pure rotation.
struct Basis {
  Mat3 axes = Mat3::Identity();
  Vec3 origin = Vec3::Zero();
  Vec3 eigenvalues = Vec3::Zero();  ///< descending, when fitted by PCA

  Vec3 to_local(const Vec3& p) const { return axes * p; }
  Vec3 to_global(const Vec3& q) const { return axes.transpose() * q; }
  Vec3 axis(int i) const { return axes.row(i).transpose(); }
};

/// Relative inflation of fitted boxes, as a fraction of the box diagonal.
inline constexpr double kObbInflation = 1e-7;

struct Obb {
  Basis basis;
  Aabb box;  ///< expressed in basis coordinates

  bool contains(const Vec3& p) const { return box.contains(basis.to_local(p)); }
  double volume() const { return box.volume(); }
  /// World-space corners, bit i of the index selects max along axis i.
  std::array<Vec3, 8> corners() const;
};

/// Componentwise min/max of the basis-transformed points; inflated by
/// kObbInflation * diagonal (plus a roundoff term scaled by the coordinate
/// magnitude) unless `inflate` is false. Throws std::invalid_argument on an
/// empty point set.
Obb fit_obb(std::span<const Vec3> points, const Basis& basis, bool inflate = true);

}  // namespace fexray
