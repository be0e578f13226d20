#pragma once

#include "fexray/types.hpp"

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace fexray {

enum class ElementOrder : std::uint8_t { linear = 1, quadratic = 2 };

constexpr int nodes_per_element(ElementOrder order) {
  return order == ElementOrder::linear ? 4 : 10;
}

// Node numbering of the 10-node tetrahedron: corners 0-3, then one midnode per
// edge in the order below (midnode index = 4 + edge index).
inline constexpr std::array<std::array<int, 2>, 6> kTetEdges{
    {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}}};

// Corner triples of the four faces, outward-oriented for a positive tetrahedron.
inline constexpr std::array<std::array<int, 3>, 4> kTetFaces{
    {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}}};

// Six nodes of each face of the 10-node tetrahedron: corners, then the
// midnodes of edges (c0,c1), (c1,c2), (c2,c0).
inline constexpr std::array<std::array<int, 6>, 4> kTetFaceNodes{
    {{0, 2, 1, 6, 5, 4}, {0, 1, 3, 4, 8, 7}, {0, 3, 2, 7, 9, 6}, {1, 2, 3, 5, 9, 8}}};

/// Reference coordinates of the ten nodes (corner 0 at the origin).
const std::array<LocalCoords, 10>& reference_nodes();

using ShapeVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 10, 1>;
using ShapeGradients = Eigen::Matrix<double, Eigen::Dynamic, 3, 0, 10, 3>;
using NodeCoords = Eigen::Matrix<double, 3, Eigen::Dynamic, 0, 3, 10>;
using BoundingPoints = Eigen::Matrix<double, 3, Eigen::Dynamic, 0, 3, 16>;

/// Lagrange shape functions on the reference tetrahedron with barycentric
/// coordinates L1 = 1 - xi1 - xi2 - xi3, L2 = xi1, L3 = xi2, L4 = xi3.
/// Corner i: L_i (2 L_i - 1); edge (a,b): 4 L_a L_b. Linear order returns L.
ShapeVector shape_values(const LocalCoords& xi, ElementOrder order);

/// Row i holds dN_i/dxi.
ShapeGradients shape_gradients(const LocalCoords& xi, ElementOrder order);

/// Node coordinates of one element gathered into a column matrix.
struct ElementGeometry {
  ElementOrder order = ElementOrder::quadratic;
  NodeCoords x;

  Vec3 map(const LocalCoords& xi) const;
  /// dx/dxi, column j is the derivative with respect to xi_j.
  Mat3 jacobian(const LocalCoords& xi) const;
  /// Signed volume of the corner tetrahedron.
  double corner_volume() const;
  /// Longest corner-to-corner distance.
  double diameter() const;
};

class Mesh {
 public:
  Mesh() = default;

  /// Takes nodes and flat connectivity (nodes_per_element(order) ids per
  /// element). Throws ValidationError when an element references a missing
  /// node, has non-positive corner volume, repeats a node position, or has a
  /// midnode further than half the edge length from its edge midpoint.
  Mesh(std::vector<Vec3> nodes, std::vector<NodeId> connectivity, ElementOrder order);

  ElementOrder order() const noexcept { return order_; }
  int nodes_per_element() const noexcept { return fexray::nodes_per_element(order_); }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t element_count() const noexcept {
    return nodes_.empty() ? 0 : connectivity_.size() / nodes_per_element();
  }

  std::span<const Vec3> nodes() const noexcept { return nodes_; }
  const Vec3& node(NodeId id) const { return nodes_.at(id); }
  std::span<const NodeId> connectivity() const noexcept { return connectivity_; }

  /// Throws std::out_of_range for an invalid id.
  std::span<const NodeId> element(ElementId e) const;
  ElementGeometry geometry(ElementId e) const;

  /// Mean of the four corner nodes.
  Vec3 corner_centroid(ElementId e) const;

  /// Points whose convex hull contains the (possibly curved) element: the
  /// nodes plus, for quadratic elements, the Bezier control point
  /// 2 m - (p0 + p1) / 2 of every edge with midnode m.
  BoundingPoints bounding_points(ElementId e) const;

 private:
  std::vector<Vec3> nodes_;
  std::vector<NodeId> connectivity_;
  ElementOrder order_ = ElementOrder::quadratic;
};

/// One scalar per node (density in g/cm^3, or unitless).
class NodalField {
 public:
  NodalField() = default;
  /// Throws ValidationError on non-finite values.
  explicit NodalField(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](NodeId id) const { return values_[id]; }

  /// Throws ValidationError when the field does not have one value per node.
  void check_matches(const Mesh& mesh) const;

 private:
  std::vector<double> values_;
};

Vec3 local_to_global(const Mesh& mesh, ElementId e, const LocalCoords& xi);

double interpolate(const NodalField& field, const Mesh& mesh, ElementId e,
                   const LocalCoords& xi);

struct BoundaryFace {
  ElementId element;
  int local_face;                  ///< index into kTetFaces
  std::array<NodeId, 3> corners;   ///< outward-oriented
};

/// Faces owned by exactly one element. Throws ValidationError if any face is
/// shared by more than two elements.
std::vector<BoundaryFace> boundary_faces(const Mesh& mesh);

/// Volume of the curved element by Gauss quadrature of det J.
double element_volume(const Mesh& mesh, ElementId e);
double mesh_volume(const Mesh& mesh);

/// Integral of the nodal field over the mesh by the same quadrature.
double field_integral(const NodalField& field, const Mesh& mesh);

}  // namespace fexray
