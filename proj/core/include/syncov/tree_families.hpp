#pragma once

#include "syncov/labels.hpp"
#include "syncov/tree.hpp"

namespace syncov {

/// Adversarial family for the original expansion: a complete binary tree of
/// `q` levels whose 2^q leaves are replaced by chains of `t` nodes. The tree
/// has t + q layers and p*t + p - 1 nodes with p = 2^q; q = 2 gives the
/// 4t + 3 node family.
///
/// Every node gets its own label ("L<layer>_<position>"), interned into
/// `vocab`, so no like terms ever merge during expansion.
DependencyTree binary_chain_tree(int t, int q, LabelVocabulary& vocab);

}  // namespace syncov
