#pragma once

#include <cstdint>

#include "syncov/labels.hpp"
#include "syncov/polynomial.hpp"
#include "syncov/tree.hpp"

namespace syncov {

inline constexpr std::uint64_t kDefaultTermBudget = 1'000'000;

/// Polynomial over two variable blocks. Index l < label_count is x_l; index
/// label_count + l is y_l. Multiplicities are the expanded coefficients.
struct OriginalPolynomial {
  Polynomial terms;
  std::size_t label_count = 0;

  bool is_y(LabelId var) const noexcept { return var >= label_count; }
  LabelId label_of(LabelId var) const noexcept {
    return is_y(var) ? static_cast<LabelId>(var - label_count) : var;
  }
};

struct OriginalStats {
  std::uint64_t multiplications = 0;  // pairwise term products formed
  std::uint64_t additions = 0;        // terms accumulated into a sum
  std::uint64_t peak_terms = 0;       // largest intermediate term count
};

struct OriginalResult {
  OriginalPolynomial polynomial;
  OriginalStats stats;
};

/// Original tree-to-polynomial conversion: P(leaf) = x_l and
/// P(m) = y_l + product of the children's polynomials, fully expanded.
///
/// Children are multiplied left to right in input order. Like terms are
/// collected after every product. The term count (with multiplicity) of any
/// intermediate or final polynomial may not exceed `term_budget`; the
/// expansion stops with TermExplosion naming the node being expanded.
OriginalResult original_polynomial(const DependencyTree& tree, const LabelVocabulary& vocab,
                                   std::uint64_t term_budget = kDefaultTermBudget);

std::string format_original(const OriginalPolynomial& p, const LabelVocabulary& vocab);

}  // namespace syncov
