#include "fexray/obb_tree.hpp"

#include "fexray/convex_hull.hpp"
#include "fexray/error.hpp"
#include "fexray/pca.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <numeric>

namespace fexray {

namespace {

struct Frame {
  Basis basis;
  Vec3 split_center;
  bool dividable;
};

class TreeBuilder {
 public:
  TreeBuilder(const Mesh& mesh, int max_leaf) : mesh_(mesh), max_leaf_(max_leaf) {
    bounds_.reserve(mesh.element_count());
    centroids_.reserve(mesh.element_count());
    for (ElementId e = 0; e < mesh.element_count(); ++e) {
      bounds_.push_back(mesh.bounding_points(e));
      centroids_.push_back(mesh.corner_centroid(e));
    }
  }

  void build(std::vector<ObbTreeNode>& nodes, std::vector<ElementId>& order) {
    order.resize(mesh_.element_count());
    std::iota(order.begin(), order.end(), ElementId{0});
    nodes.clear();
    recurse(nodes, order, 0, static_cast<std::uint32_t>(order.size()), 0);
  }

 private:
  std::vector<Vec3> collect_points(std::span<const ElementId> elems) const {
    std::vector<Vec3> pts;
    for (ElementId e : elems) {
      const auto& b = bounds_[e];
      for (Eigen::Index i = 0; i < b.cols(); ++i) pts.push_back(b.col(i));
    }
    std::sort(pts.begin(), pts.end(), [](const Vec3& a, const Vec3& b) {
      return std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  }

  Frame fit_frame(std::span<const ElementId> elems, std::span<const Vec3> pts) const {
    try {
      const ConvexHull hull = convex_hull(pts);
      const std::vector<Triangle> tris = hull.triangles();
      Basis basis = pca_basis(tris);
      return {basis, basis.origin, true};
    } catch (const DegenerateHullError&) {
    } catch (const ValidationError&) {
    }
    std::vector<Vec3> centers;
    for (ElementId e : elems) centers.push_back(centroids_[e]);
    Basis basis = pca_basis_points(centers);
    return {basis, basis.origin, false};
  }

  int recurse(std::vector<ObbTreeNode>& nodes, std::vector<ElementId>& order, std::uint32_t first,
              std::uint32_t count, int depth) {
    const auto elems = std::span<ElementId>(order).subspan(first, count);
    const std::vector<Vec3> pts = collect_points(elems);
    const Frame frame = fit_frame(elems, pts);

    const int id = static_cast<int>(nodes.size());
    nodes.push_back({});
    nodes[id].obb = fit_obb(pts, frame.basis);
    nodes[id].first = first;
    nodes[id].count = count;
    nodes[id].depth = depth;

    if (count <= static_cast<std::uint32_t>(max_leaf_) || !frame.dividable) return id;

    const Vec3 extent = nodes[id].obb.box.extent();
    std::array<int, 3> axes{0, 1, 2};
    std::stable_sort(axes.begin(), axes.end(), [&](int a, int b) { return extent[a] > extent[b]; });

    for (int axis : axes) {
      const Vec3 dir = frame.basis.axis(axis);
      const double cut = dir.dot(frame.split_center);
      // Elements on the plane go to the first child.
      const auto mid = std::stable_partition(elems.begin(), elems.end(), [&](ElementId e) {
        return dir.dot(centroids_[e]) <= cut;
      });
      const auto n_first = static_cast<std::uint32_t>(mid - elems.begin());
      if (n_first == 0 || n_first == count) continue;

      const int left = recurse(nodes, order, first, n_first, depth + 1);
      const int right = recurse(nodes, order, first + n_first, count - n_first, depth + 1);
      nodes[id].left = left;
      nodes[id].right = right;
      return id;
    }
    return id;
  }

  const Mesh& mesh_;
  int max_leaf_;
  std::vector<BoundingPoints> bounds_;
  std::vector<Vec3> centroids_;
};

}  // namespace

std::size_t ObbTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const ObbTreeNode& n) { return n.is_leaf(); }));
}

int ObbTree::depth() const {
  int d = 0;
  for (const auto& n : nodes_) d = std::max(d, n.depth);
  return d;
}

std::string ObbTree::dump_json() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const ObbTreeNode& n = nodes_[i];
    nlohmann::json j;
    j["id"] = i;
    j["depth"] = n.depth;
    nlohmann::json corners = nlohmann::json::array();
    for (const Vec3& c : n.obb.corners()) corners.push_back({c.x(), c.y(), c.z()});
    j["corners"] = corners;
    if (n.is_leaf()) {
      const auto elems = elements(n);
      j["elements"] = std::vector<ElementId>(elems.begin(), elems.end());
    } else {
      j["children"] = {n.left, n.right};
    }
    nodes.push_back(std::move(j));
  }
  nlohmann::json doc;
  doc["node_count"] = nodes_.size();
  doc["leaf_count"] = leaf_count();
  doc["depth"] = depth();
  doc["nodes"] = std::move(nodes);
  return doc.dump(1);
}

ObbTree build_obb_tree(const Mesh& mesh, int max_leaf_elements) {
  if (mesh.element_count() == 0) throw ValidationError("cannot build an OBB tree over an empty mesh");
  if (max_leaf_elements < 1) throw ValidationError("max_leaf_elements must be at least 1");
  ObbTree tree;
  TreeBuilder(mesh, max_leaf_elements).build(tree.nodes_, tree.order_);
  return tree;
}

}  // namespace fexray
