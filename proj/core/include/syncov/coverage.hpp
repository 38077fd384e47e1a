#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "syncov/polynomial.hpp"
#include "syncov/term.hpp"
#include "syncov/token_bag.hpp"

namespace syncov {

enum class CoverageMeasure { normalized_manhattan, cosine };

std::string_view to_string(CoverageMeasure m) noexcept;
std::optional<CoverageMeasure> parse_coverage_measure(std::string_view s) noexcept;

/// c(s, t). normalized_manhattan: 1 / (1 + |s - t|_1). cosine: s.t / (|s| |t|).
/// Throws DomainError for an empty vector.
double term_similarity(const TermVector& s, const TermVector& t,
                       CoverageMeasure measure = CoverageMeasure::normalized_manhattan);

/// Multiset union of the terms of one or more polynomials.
class TermPool {
 public:
  TermPool() = default;
  explicit TermPool(const Polynomial& p) { add(p); }

  void add(const Polynomial& p);

  std::span<const Term> terms() const noexcept { return pool_.terms(); }
  std::uint64_t term_count() const noexcept { return pool_.term_count(); }
  bool empty() const noexcept { return pool_.empty(); }
  const Polynomial& as_polynomial() const noexcept { return pool_; }

 private:
  Polynomial pool_;
};

/// Mean over the query's terms (with multiplicity) of the best similarity
/// to any pool term.
double syn_set_cov(const Polynomial& query, const TermPool& pool,
                   CoverageMeasure measure = CoverageMeasure::normalized_manhattan);

/// |W_x ∩ W_Z| / |W_x| with min-count multiset intersection.
double word_set_cov(const TokenBag& query, const TokenBag& pool);

/// Incremental syn_set_cov against a growing cover: keeps the best
/// similarity per query term so scoring cover ∪ {candidate} costs
/// O(|T_x| * |T_candidate|) instead of rescanning the whole cover. Values are
/// bit-identical to syn_set_cov on the explicit union.
class SyntaxCoverageCursor {
 public:
  SyntaxCoverageCursor(const Polynomial& query, CoverageMeasure measure);

  /// Coverage of the current cover; 0 while the cover is empty.
  double coverage() const noexcept;
  double coverage_with(const Polynomial& candidate) const;
  void absorb(const Polynomial& candidate);
  void reset();

 private:
  double best_with(std::size_t i, const Polynomial& candidate) const;

  const Polynomial* query_;
  CoverageMeasure measure_;
  std::vector<double> best_;
};

/// Incremental word_set_cov, tracking cover counts projected onto the
/// query's vocabulary.
class WordCoverageCursor {
 public:
  explicit WordCoverageCursor(const TokenBag& query);

  double coverage() const noexcept;
  double coverage_with(const TokenBag& candidate) const;
  void absorb(const TokenBag& candidate);
  void reset();

 private:
  const TokenBag* query_;
  std::vector<std::uint64_t> cover_;
};

}  // namespace syncov
