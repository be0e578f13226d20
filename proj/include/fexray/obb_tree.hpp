#pragma once

#include "fexray/mesh.hpp"
#include "fexray/obb.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fexray {

struct ObbTreeNode {
  Obb obb;
  int left = -1;             ///< child node indices, -1 for leaves
  int right = -1;
  std::uint32_t first = 0;   ///< leaf range into ObbTree::element_order()
  std::uint32_t count = 0;   ///< number of elements in the subtree
  int depth = 0;

  bool is_leaf() const noexcept { return left < 0; }
};

/// Top-down binary hierarchy of oriented bounding boxes over mesh elements.
/// Each subtree owns a contiguous range of element_order(), so the elements
/// of any node are element_order()[first, first + count).
class ObbTree {
 public:
  static constexpr int kDefaultMaxLeafElements = 10;

  ObbTree() = default;

  std::span<const ObbTreeNode> nodes() const noexcept { return nodes_; }
  const ObbTreeNode& root() const { return nodes_.front(); }
  std::span<const ElementId> element_order() const noexcept { return order_; }
  std::span<const ElementId> elements(const ObbTreeNode& node) const {
    return std::span<const ElementId>(order_).subspan(node.first, node.count);
  }
  bool empty() const noexcept { return nodes_.empty(); }
  std::size_t leaf_count() const;
  int depth() const;

  /// JSON description: per node depth, world-space box corners, children and
  /// (for leaves) element ids.
  std::string dump_json() const;

 private:
  friend ObbTree build_obb_tree(const Mesh& mesh, int max_leaf_elements);

  std::vector<ObbTreeNode> nodes_;
  std::vector<ElementId> order_;
};

/// Builds the hierarchy. A node becomes a leaf when it holds at most
/// max_leaf_elements, when its bounding points span no volume, or when no
/// box axis (longest first) separates the element corner centroids about the
/// area-weighted hull center. Throws ValidationError for an empty mesh or
/// max_leaf_elements < 1.
ObbTree build_obb_tree(const Mesh& mesh, int max_leaf_elements = ObbTree::kDefaultMaxLeafElements);

}  // namespace fexray
