#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "syncov/labels.hpp"
#include "syncov/term.hpp"
#include "syncov/tree.hpp"

namespace syncov {

struct Term {
  TermVector vector;
  std::uint64_t multiplicity = 1;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Multiset of term vectors, kept in canonical order with equal vectors
/// merged into one entry carrying a multiplicity.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Term> terms);
  static Polynomial from_vectors(std::vector<TermVector> vectors);

  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t distinct_terms() const noexcept { return terms_.size(); }

  /// Number of terms counted with multiplicity.
  std::uint64_t term_count() const noexcept { return term_count_; }
  bool empty() const noexcept { return terms_.empty(); }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<Term> terms_;
  std::uint64_t term_count_ = 0;
};

struct SimplifiedStats {
  std::uint64_t nodes_visited = 0;
  std::uint64_t entries_written = 0;  // sparse (label, exponent) pairs emitted

  std::uint64_t work() const noexcept { return nodes_visited + entries_written; }
};

/// Simplified tree-to-polynomial conversion: P(leaf) = x_l and
/// P(m) = x_l * (1 + sum of children). Every node contributes exactly one term,
/// the label counts along its root-to-node path. Runs as one iterative
/// depth-first walk, so depth is bounded only by memory.
Polynomial simplified_polynomial(const DependencyTree& tree, const LabelVocabulary& vocab,
                                 SimplifiedStats* stats = nullptr);

/// Symmetric chamfer distance: each term's Manhattan distance to its nearest
/// counterpart in the other polynomial, summed both ways and divided by the
/// total term count. Multiplicities weight both sums and the denominator.
double polynomial_distance(const Polynomial& p, const Polynomial& q);

/// Human-readable form, e.g. "root + root*det + 2 root*nsubj". Labels outside
/// `vocab` are printed as x<index>.
std::string format_polynomial(const Polynomial& p, const LabelVocabulary& vocab);

}  // namespace syncov
