#include "fexray/pca.hpp"

#include "fexray/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

namespace fexray {

namespace {

void normalize_sign(Vec3& v) {
  Eigen::Index i = 0;
  v.cwiseAbs().maxCoeff(&i);
  if (v[i] < 0.0) v = -v;
}

}  // namespace

CentroidArea triangle_centroid_area(const Triangle& t) {
  std::array<double, 3> s{(t.p - t.q).norm(), (t.q - t.r).norm(), (t.r - t.p).norm()};
  std::sort(s.begin(), s.end(), std::greater<>());
  const double a = s[0], b = s[1], c = s[2];
  // Heron's formula, 16 A^2 = (a+b+c)(-a+b+c)(a-b+c)(a+b-c), grouped so every
  // factor is computed without cancellation when a >= b >= c.
  const double prod = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  const double area = prod > 0.0 ? 0.25 * std::sqrt(prod) : 0.0;
  return {(t.p + t.q + t.r) / 3.0, area};
}

Vec3 weighted_center(std::span<const Triangle> triangles) {
  Vec3 sum = Vec3::Zero();
  double total = 0.0;
  for (const Triangle& t : triangles) {
    const auto [c, a] = triangle_centroid_area(t);
    sum += a * c;
    total += a;
  }
  if (!(total > 0.0)) throw ValidationError("weighted_center: total triangle area is zero");
  return sum / total;
}

Mat3 covariance(std::span<const Triangle> triangles, const Vec3& mu) {
  if (triangles.size() < 2) throw ValidationError("covariance: need at least two triangles");
  Mat3 c = Mat3::Zero();
  for (const Triangle& t : triangles) {
    const auto [centroid, area] = triangle_centroid_area(t);
    const Vec3 cbar = std::sqrt(area) * (centroid - mu);
    c.noalias() += cbar * cbar.transpose();
  }
  return c / static_cast<double>(triangles.size() - 1);
}

Basis basis_from_covariance(const Mat3& c, const Vec3& origin) {
  Eigen::SelfAdjointEigenSolver<Mat3> solver(c);
  // Eigen sorts ascending.
  const Vec3 values = solver.eigenvalues();
  const Mat3 vectors = solver.eigenvectors();
  Vec3 e0 = vectors.col(2);
  Vec3 e1 = vectors.col(1);
  normalize_sign(e0);
  normalize_sign(e1);
  Basis b;
  b.axes.row(0) = e0.transpose();
  b.axes.row(1) = e1.transpose();
  b.axes.row(2) = e0.cross(e1).normalized().transpose();
  b.origin = origin;
  b.eigenvalues = Vec3(values[2], values[1], values[0]);
  return b;
}

Basis pca_basis(std::span<const Triangle> triangles) {
  const Vec3 mu = weighted_center(triangles);
  return basis_from_covariance(covariance(triangles, mu), mu);
}

Basis pca_basis_points(std::span<const Vec3> points) {
  if (points.empty()) return {};
  Vec3 mu = Vec3::Zero();
  for (const Vec3& p : points) mu += p;
  mu /= static_cast<double>(points.size());
  Mat3 c = Mat3::Zero();
  for (const Vec3& p : points) c.noalias() += (p - mu) * (p - mu).transpose();
  if (points.size() > 1) c /= static_cast<double>(points.size() - 1);
  return basis_from_covariance(c, mu);
}

}  // namespace fexray
