#include "syncov/tree_families.hpp"

#include <string>

#include "syncov/error.hpp"

namespace syncov {

DependencyTree binary_chain_tree(int t, int q, LabelVocabulary& vocab) {
  if (t < 1 || q < 0 || q > 20) {
    throw DomainError("binary_chain_tree requires t >= 1 and 0 <= q <= 20");
  }
  const int layers = t + q;
  std::vector<DependencyTree::Node> nodes;
  // Node ids are assigned top-down; layer `layers` is the root.
  auto id_of = [&](int layer, int j) {
    // Layers above the chains hold 2^(layers - layer) nodes.
    int id = 0;
    for (int l = layers; l > layer; --l) id += (l > t) ? (1 << (layers - l)) : (1 << q);
    return id + j;
  };

  for (int layer = layers; layer >= 1; --layer) {
    const int width = layer > t ? (1 << (layers - layer)) : (1 << q);
    for (int j = 0; j < width; ++j) {
      const LabelId label =
          vocab.intern("L" + std::to_string(layer) + "_" + std::to_string(j + 1));
      int parent = DependencyTree::kRoot;
      if (layer < layers) {
        // Below the binary part each node hangs under the same chain index.
        const int parent_j = (layer + 1 > t) ? j / 2 : j;
        parent = id_of(layer + 1, parent_j);
      }
      nodes.push_back({id_of(layer, j), label, parent});
    }
  }
  return DependencyTree(std::move(nodes));
}

}  // namespace syncov
