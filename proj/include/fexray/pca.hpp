#pragma once

#include "fexray/obb.hpp"
#include "fexray/types.hpp"

#include <span>

namespace fexray {

/// Linear triangle (2-simplex).
struct Triangle {
  Vec3 p, q, r;
};

struct CentroidArea {
  Vec3 centroid;
  double area;
};

/// Centroid (p + q + r) / 3 and area by Heron's formula, evaluated in the
/// numerically stable ordering of the side lengths. Degenerate input gives 0.
CentroidArea triangle_centroid_area(const Triangle& t);

/// Area-weighted mean of triangle centroids. Throws ValidationError when the
/// total area is zero.
Vec3 weighted_center(std::span<const Triangle> triangles);

/// C_ij = 1/(n-1) sum_k cbar_i cbar_j with cbar = sqrt(A) (c - mu).
/// Throws ValidationError for fewer than two triangles.
Mat3 covariance(std::span<const Triangle> triangles, const Vec3& mu);

/// Eigenbasis of a symmetric matrix: rows sorted by descending eigenvalue,
/// the first two rows signed so their largest-magnitude component is
/// positive, the third row their cross product.
Basis basis_from_covariance(const Mat3& c, const Vec3& origin);

/// PCA of a surface triangulation (weighted center plus covariance eigenbasis).
Basis pca_basis(std::span<const Triangle> triangles);

/// Unit-weight PCA of a point cloud; fallback when no hull can be built.
Basis pca_basis_points(std::span<const Vec3> points);

}  // namespace fexray
