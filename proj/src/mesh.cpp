#include "fexray/mesh.hpp"

#include "fexray/error.hpp"
#include "fexray/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace fexray {

namespace {

constexpr double kDuplicateNodeTol = 1e-12;

std::array<double, 4> barycentric(const LocalCoords& xi) {
  return {1.0 - xi[0] - xi[1] - xi[2], xi[0], xi[1], xi[2]};
}

// Gradient of L_i with respect to xi.
Eigen::RowVector3d barycentric_gradient(int i) {
  switch (i) {
    case 0: return {-1.0, -1.0, -1.0};
    case 1: return {1.0, 0.0, 0.0};
    case 2: return {0.0, 1.0, 0.0};
    default: return {0.0, 0.0, 1.0};
  }
}

std::string element_error(ElementId e, const std::string& what) {
  return "element " + std::to_string(e) + ": " + what;
}

}  // namespace

const std::array<LocalCoords, 10>& reference_nodes() {
  static const std::array<LocalCoords, 10> nodes = [] {
    std::array<LocalCoords, 10> n;
    n[0] = {0, 0, 0};
    n[1] = {1, 0, 0};
    n[2] = {0, 1, 0};
    n[3] = {0, 0, 1};
    for (std::size_t k = 0; k < kTetEdges.size(); ++k) {
      n[4 + k] = 0.5 * (n[kTetEdges[k][0]] + n[kTetEdges[k][1]]);
    }
    return n;
  }();
  return nodes;
}

ShapeVector shape_values(const LocalCoords& xi, ElementOrder order) {
  const auto l = barycentric(xi);
  ShapeVector n(nodes_per_element(order));
  if (order == ElementOrder::linear) {
    for (int i = 0; i < 4; ++i) n[i] = l[i];
    return n;
  }
  for (int i = 0; i < 4; ++i) n[i] = l[i] * (2.0 * l[i] - 1.0);
  for (std::size_t k = 0; k < kTetEdges.size(); ++k) {
    n[4 + k] = 4.0 * l[kTetEdges[k][0]] * l[kTetEdges[k][1]];
  }
  return n;
}

ShapeGradients shape_gradients(const LocalCoords& xi, ElementOrder order) {
  ShapeGradients g(nodes_per_element(order), 3);
  if (order == ElementOrder::linear) {
    for (int i = 0; i < 4; ++i) g.row(i) = barycentric_gradient(i);
    return g;
  }
  const auto l = barycentric(xi);
  for (int i = 0; i < 4; ++i) g.row(i) = (4.0 * l[i] - 1.0) * barycentric_gradient(i);
  for (std::size_t k = 0; k < kTetEdges.size(); ++k) {
    const int a = kTetEdges[k][0];
    const int b = kTetEdges[k][1];
    g.row(4 + k) = 4.0 * (l[a] * barycentric_gradient(b) + l[b] * barycentric_gradient(a));
  }
  return g;
}

Vec3 ElementGeometry::map(const LocalCoords& xi) const {
  return x * shape_values(xi, order);
}

Mat3 ElementGeometry::jacobian(const LocalCoords& xi) const {
  return x * shape_gradients(xi, order);
}

double ElementGeometry::corner_volume() const {
  Mat3 edges;
  edges.col(0) = x.col(1) - x.col(0);
  edges.col(1) = x.col(2) - x.col(0);
  edges.col(2) = x.col(3) - x.col(0);
  return edges.determinant() / 6.0;
}

double ElementGeometry::diameter() const {
  double d = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) d = std::max(d, (x.col(a) - x.col(b)).norm());
  }
  return d;
}

Mesh::Mesh(std::vector<Vec3> nodes, std::vector<NodeId> connectivity, ElementOrder order)
    : nodes_(std::move(nodes)), connectivity_(std::move(connectivity)), order_(order) {
  const auto npe = static_cast<std::size_t>(nodes_per_element());
  if (connectivity_.size() % npe != 0) {
    throw ValidationError("connectivity length " + std::to_string(connectivity_.size()) +
                          " is not a multiple of " + std::to_string(npe));
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!nodes_[i].allFinite()) {
      throw ValidationError("node " + std::to_string(i) + ": non-finite coordinate");
    }
  }
  for (ElementId e = 0; e < element_count(); ++e) {
    const auto ids = element(e);
    for (NodeId id : ids) {
      if (id >= nodes_.size()) {
        throw ValidationError(element_error(e, "references missing node " + std::to_string(id)));
      }
    }
    const ElementGeometry g = geometry(e);
    for (int a = 0; a < g.x.cols(); ++a) {
      for (int b = a + 1; b < g.x.cols(); ++b) {
        if ((g.x.col(a) - g.x.col(b)).norm() <= kDuplicateNodeTol) {
          throw ValidationError(element_error(e, "nodes " + std::to_string(a) + " and " +
                                                     std::to_string(b) + " coincide"));
        }
      }
    }
    if (!(g.corner_volume() > 0.0)) {
      throw ValidationError(element_error(e, "non-positive corner volume"));
    }
    if (order_ == ElementOrder::quadratic) {
      for (std::size_t k = 0; k < kTetEdges.size(); ++k) {
        const Vec3 p0 = g.x.col(kTetEdges[k][0]);
        const Vec3 p1 = g.x.col(kTetEdges[k][1]);
        const Vec3 m = g.x.col(4 + k);
        if ((m - 0.5 * (p0 + p1)).norm() > 0.5 * (p1 - p0).norm()) {
          throw ValidationError(
              element_error(e, "midnode of edge " + std::to_string(k) + " is too far from the edge"));
        }
      }
    }
  }
}

std::span<const NodeId> Mesh::element(ElementId e) const {
  if (e >= element_count()) {
    throw std::out_of_range("element id " + std::to_string(e) + " out of range");
  }
  const auto npe = static_cast<std::size_t>(nodes_per_element());
  return std::span<const NodeId>(connectivity_).subspan(e * npe, npe);
}

ElementGeometry Mesh::geometry(ElementId e) const {
  const auto ids = element(e);
  ElementGeometry g;
  g.order = order_;
  g.x.resize(3, static_cast<Eigen::Index>(ids.size()));
  for (std::size_t i = 0; i < ids.size(); ++i) g.x.col(i) = nodes_[ids[i]];
  return g;
}

Vec3 Mesh::corner_centroid(ElementId e) const {
  const auto ids = element(e);
  return 0.25 * (nodes_[ids[0]] + nodes_[ids[1]] + nodes_[ids[2]] + nodes_[ids[3]]);
}

BoundingPoints Mesh::bounding_points(ElementId e) const {
  const ElementGeometry g = geometry(e);
  BoundingPoints pts;
  if (order_ == ElementOrder::linear) {
    pts = g.x;
    return pts;
  }
  pts.resize(3, 16);
  pts.leftCols(10) = g.x;
  for (std::size_t k = 0; k < kTetEdges.size(); ++k) {
    const Vec3 p0 = g.x.col(kTetEdges[k][0]);
    const Vec3 p1 = g.x.col(kTetEdges[k][1]);
    pts.col(10 + k) = 2.0 * g.x.col(4 + k) - 0.5 * (p0 + p1);
  }
  return pts;
}

NodalField::NodalField(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw ValidationError("field value " + std::to_string(i) + " is not finite");
    }
  }
}

void NodalField::check_matches(const Mesh& mesh) const {
  if (values_.size() != mesh.node_count()) {
    throw ValidationError("field has " + std::to_string(values_.size()) + " values but mesh has " +
                          std::to_string(mesh.node_count()) + " nodes");
  }
}

Vec3 local_to_global(const Mesh& mesh, ElementId e, const LocalCoords& xi) {
  return mesh.geometry(e).map(xi);
}

double interpolate(const NodalField& field, const Mesh& mesh, ElementId e, const LocalCoords& xi) {
  field.check_matches(mesh);
  const auto ids = mesh.element(e);
  const ShapeVector n = shape_values(xi, mesh.order());
  double q = 0.0;
  for (std::size_t i = 0; i < ids.size(); ++i) q += n[i] * field[ids[i]];
  return q;
}

std::vector<BoundaryFace> boundary_faces(const Mesh& mesh) {
  std::map<std::array<NodeId, 3>, int> count;
  for (ElementId e = 0; e < mesh.element_count(); ++e) {
    const auto ids = mesh.element(e);
    for (const auto& f : kTetFaces) {
      std::array<NodeId, 3> key{ids[f[0]], ids[f[1]], ids[f[2]]};
      std::sort(key.begin(), key.end());
      if (++count[key] > 2) {
        throw ValidationError(element_error(e, "face shared by more than two elements"));
      }
    }
  }
  std::vector<BoundaryFace> faces;
  for (ElementId e = 0; e < mesh.element_count(); ++e) {
    const auto ids = mesh.element(e);
    for (int lf = 0; lf < 4; ++lf) {
      const auto& f = kTetFaces[lf];
      std::array<NodeId, 3> corners{ids[f[0]], ids[f[1]], ids[f[2]]};
      auto key = corners;
      std::sort(key.begin(), key.end());
      if (count[key] == 1) faces.push_back({e, lf, corners});
    }
  }
  return faces;
}

double element_volume(const Mesh& mesh, ElementId e) {
  const ElementGeometry g = mesh.geometry(e);
  double v = 0.0;
  for (const auto& qp : tet_gauss_rule()) v += qp.weight * g.jacobian(qp.xi).determinant();
  return v;
}

double mesh_volume(const Mesh& mesh) {
  double v = 0.0;
  for (ElementId e = 0; e < mesh.element_count(); ++e) v += element_volume(mesh, e);
  return v;
}

double field_integral(const NodalField& field, const Mesh& mesh) {
  field.check_matches(mesh);
  double total = 0.0;
  for (ElementId e = 0; e < mesh.element_count(); ++e) {
    const ElementGeometry g = mesh.geometry(e);
    const auto ids = mesh.element(e);
    for (const auto& qp : tet_gauss_rule()) {
      const ShapeVector n = shape_values(qp.xi, mesh.order());
      double q = 0.0;
      for (std::size_t i = 0; i < ids.size(); ++i) q += n[i] * field[ids[i]];
      total += qp.weight * q * g.jacobian(qp.xi).determinant();
    }
  }
  return total;
}

}  // namespace fexray
