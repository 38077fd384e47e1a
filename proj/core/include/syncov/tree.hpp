#pragma once

#include <span>
#include <vector>

#include "syncov/labels.hpp"

namespace syncov {

/// Rooted labeled tree built from one parsed sentence. The dependency label
/// sits on the child node (the relation to its head).
///
/// Nodes are addressed two ways: by their external id (e.g. CoNLL-U token
/// index) and by position in `nodes()`. Traversal helpers use positions.
class DependencyTree {
 public:
  static constexpr int kRoot = -1;

  struct Node {
    int id = 0;
    LabelId label = 0;
    int parent = kRoot;  // external id of the head, or kRoot

    friend bool operator==(const Node&, const Node&) = default;
  };

  /// Validates the node list: n >= 1, unique ids, exactly one root, every
  /// parent exists and the parent relation is acyclic. Throws StructureError.
  explicit DependencyTree(std::vector<Node> nodes);

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }

  std::size_t root() const noexcept { return root_; }
  LabelId label(std::size_t pos) const { return nodes_[pos].label; }
  int parent_position(std::size_t pos) const { return parent_pos_[pos]; }

  /// Children of `pos` in input order.
  std::span<const std::size_t> children(std::size_t pos) const {
    return {child_list_.data() + child_begin_[pos], child_begin_[pos + 1] - child_begin_[pos]};
  }

  /// Number of nodes on the longest root-to-node path.
  std::size_t height() const noexcept { return height_; }

  /// Throws IngestError if any label index falls outside `vocab`.
  void check_labels(const LabelVocabulary& vocab) const;

  friend bool operator==(const DependencyTree& a, const DependencyTree& b) {
    return a.nodes_ == b.nodes_;
  }

 private:
  std::vector<Node> nodes_;
  std::vector<int> parent_pos_;
  std::vector<std::size_t> child_begin_;
  std::vector<std::size_t> child_list_;
  std::size_t root_ = 0;
  std::size_t height_ = 0;
};

}  // namespace syncov
