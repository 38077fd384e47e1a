#include "syncov/tree.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "syncov/error.hpp"

namespace syncov {

DependencyTree::DependencyTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  const std::size_t n = nodes_.size();
  if (n == 0) {
    throw StructureError("dependency tree has no nodes");
  }

  std::unordered_map<int, std::size_t> position;
  position.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!position.emplace(nodes_[i].id, i).second) {
      throw StructureError("duplicate node id " + std::to_string(nodes_[i].id));
    }
  }

  parent_pos_.assign(n, kRoot);
  std::size_t roots = 0;
  std::vector<std::size_t> child_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const int parent = nodes_[i].parent;
    if (parent == kRoot) {
      ++roots;
      root_ = i;
      continue;
    }
    auto it = position.find(parent);
    if (it == position.end()) {
      throw StructureError("node " + std::to_string(nodes_[i].id) + " has missing parent " +
                           std::to_string(parent));
    }
    parent_pos_[i] = static_cast<int>(it->second);
    ++child_count[it->second];
  }
  if (roots != 1) {
    throw StructureError("dependency tree must have exactly one root, found " +
                         std::to_string(roots));
  }

  child_begin_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    child_begin_[i + 1] = child_begin_[i] + child_count[i];
  }
  child_list_.resize(n - 1);
  std::vector<std::size_t> fill(child_begin_.begin(), child_begin_.end() - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (parent_pos_[i] != kRoot) {
      child_list_[fill[parent_pos_[i]]++] = i;
    }
  }

  // Breadth-first from the root; any unreached node sits on a cycle.
  std::vector<std::size_t> depth(n, 0);
  std::vector<std::size_t> queue{root_};
  queue.reserve(n);
  depth[root_] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t u = queue[head];
    height_ = std::max(height_, depth[u]);
    for (std::size_t c : children(u)) {
      depth[c] = depth[u] + 1;
      queue.push_back(c);
    }
  }
  if (queue.size() != n) {
    throw StructureError("dependency tree contains a cycle (" + std::to_string(n - queue.size()) +
                         " nodes unreachable from the root)");
  }
}

void DependencyTree::check_labels(const LabelVocabulary& vocab) const {
  for (const auto& node : nodes_) {
    if (node.label >= vocab.size()) {
      throw IngestError("node " + std::to_string(node.id) + " has label id " +
                        std::to_string(node.label) + " outside vocabulary of size " +
                        std::to_string(vocab.size()));
    }
  }
}

}  // namespace syncov
