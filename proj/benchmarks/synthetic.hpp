#pragma once

// Small generators shared by the benchmarks.

#include <random>
#include <string>
#include <vector>

#include "syncov/example.hpp"
#include "syncov/labels.hpp"
#include "syncov/polynomial.hpp"
#include "syncov/tree.hpp"

namespace bench {

inline syncov::LabelVocabulary vocab(int d) {
  syncov::LabelVocabulary v;
  for (int i = 0; i < d; ++i) v.intern("l" + std::to_string(i));
  return v;
}

inline syncov::DependencyTree random_tree(std::mt19937_64& rng, int n, int labels) {
  std::vector<syncov::DependencyTree::Node> nodes;
  std::uniform_int_distribution<syncov::LabelId> label(0, static_cast<syncov::LabelId>(labels - 1));
  for (int i = 1; i <= n; ++i) {
    const int parent = i == 1 ? syncov::DependencyTree::kRoot
                              : std::uniform_int_distribution<int>(std::max(1, i - 4), i - 1)(rng);
    nodes.push_back({i, label(rng), parent});
  }
  return syncov::DependencyTree(std::move(nodes));
}

inline std::vector<std::string> random_words(std::mt19937_64& rng, int n, int vocab_size) {
  std::uniform_int_distribution<int> w(0, vocab_size - 1);
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("w" + std::to_string(w(rng)));
  return out;
}

inline syncov::ExampleRecord record(std::mt19937_64& rng, syncov::ExampleId id, int nodes, int words,
                                    const syncov::LabelVocabulary& v) {
  syncov::ExampleRecord r;
  r.id = id;
  r.source_tokens = random_words(rng, words, 2000);
  r.source_bag = syncov::TokenBag(r.source_tokens);
  r.tree = random_tree(rng, nodes, static_cast<int>(v.size()));
  r.polynomial = syncov::simplified_polynomial(*r.tree, v);
  return r;
}

}  // namespace bench
