#include "syncov/coverage.hpp"

#include <algorithm>
#include <cmath>

#include "syncov/error.hpp"

namespace syncov {

std::string_view to_string(CoverageMeasure m) noexcept {
  return m == CoverageMeasure::cosine ? "cosine" : "normalized-manhattan";
}

std::optional<CoverageMeasure> parse_coverage_measure(std::string_view s) noexcept {
  if (s == "normalized-manhattan" || s == "manhattan") return CoverageMeasure::normalized_manhattan;
  if (s == "cosine") return CoverageMeasure::cosine;
  return std::nullopt;
}

double term_similarity(const TermVector& s, const TermVector& t, CoverageMeasure measure) {
  if (s.empty() || t.empty()) {
    throw DomainError("term_similarity requires non-empty term vectors");
  }
  if (measure == CoverageMeasure::cosine) {
    // One sqrt of the exact integer product: identical or parallel vectors
    // then give exactly 1.
    const double denom = std::sqrt(static_cast<double>(squared_norm(s) * squared_norm(t)));
    return std::min(1.0, static_cast<double>(dot(s, t)) / denom);
  }
  return 1.0 / (1.0 + static_cast<double>(manhattan_distance(s, t)));
}

void TermPool::add(const Polynomial& p) {
  std::vector<Term> merged(pool_.terms().begin(), pool_.terms().end());
  merged.insert(merged.end(), p.terms().begin(), p.terms().end());
  pool_ = Polynomial(std::move(merged));
}

namespace {

// Best similarity of `s` to any term of `pool`; stops at an exact match.
double best_similarity(const TermVector& s, std::span<const Term> pool, CoverageMeasure measure,
                       double floor) {
  double best = floor;
  for (const auto& t : pool) {
    if (best >= 1.0) break;
    best = std::max(best, term_similarity(s, t.vector, measure));
  }
  return best;
}

void require_query(const Polynomial& query) {
  if (query.empty()) throw DomainError("syntactic coverage requires a non-empty query");
}

}  // namespace

double syn_set_cov(const Polynomial& query, const TermPool& pool, CoverageMeasure measure) {
  require_query(query);
  if (pool.empty()) throw DomainError("syn_set_cov requires a non-empty term pool");
  double sum = 0.0;
  for (const auto& s : query.terms()) {
    sum += static_cast<double>(s.multiplicity) *
           best_similarity(s.vector, pool.terms(), measure, 0.0);
  }
  return sum / static_cast<double>(query.term_count());
}

double word_set_cov(const TokenBag& query, const TokenBag& pool) {
  if (query.empty()) throw DomainError("word_set_cov requires a non-empty query");
  return static_cast<double>(intersection_size(query, pool)) /
         static_cast<double>(query.total());
}

SyntaxCoverageCursor::SyntaxCoverageCursor(const Polynomial& query, CoverageMeasure measure)
    : query_(&query), measure_(measure), best_(query.distinct_terms(), 0.0) {
  require_query(query);
}

double SyntaxCoverageCursor::best_with(std::size_t i, const Polynomial& candidate) const {
  return best_similarity(query_->terms()[i].vector, candidate.terms(), measure_, best_[i]);
}

double SyntaxCoverageCursor::coverage() const noexcept {
  double sum = 0.0;
  const auto terms = query_->terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    sum += static_cast<double>(terms[i].multiplicity) * best_[i];
  }
  return sum / static_cast<double>(query_->term_count());
}

double SyntaxCoverageCursor::coverage_with(const Polynomial& candidate) const {
  double sum = 0.0;
  const auto terms = query_->terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    sum += static_cast<double>(terms[i].multiplicity) * best_with(i, candidate);
  }
  return sum / static_cast<double>(query_->term_count());
}

void SyntaxCoverageCursor::absorb(const Polynomial& candidate) {
  for (std::size_t i = 0; i < best_.size(); ++i) best_[i] = best_with(i, candidate);
}

void SyntaxCoverageCursor::reset() { std::fill(best_.begin(), best_.end(), 0.0); }

WordCoverageCursor::WordCoverageCursor(const TokenBag& query)
    : query_(&query), cover_(query.distinct(), 0) {
  if (query.empty()) throw DomainError("word_set_cov requires a non-empty query");
}

double WordCoverageCursor::coverage() const noexcept {
  std::uint64_t hit = 0;
  const auto entries = query_->entries();
  for (std::size_t j = 0; j < entries.size(); ++j) {
    hit += std::min<std::uint64_t>(entries[j].second, cover_[j]);
  }
  return static_cast<double>(hit) / static_cast<double>(query_->total());
}

double WordCoverageCursor::coverage_with(const TokenBag& candidate) const {
  std::uint64_t hit = 0;
  const auto entries = query_->entries();
  for (std::size_t j = 0; j < entries.size(); ++j) {
    hit += std::min<std::uint64_t>(entries[j].second, cover_[j] + candidate.count(entries[j].first));
  }
  return static_cast<double>(hit) / static_cast<double>(query_->total());
}

void WordCoverageCursor::absorb(const TokenBag& candidate) {
  const auto entries = query_->entries();
  for (std::size_t j = 0; j < entries.size(); ++j) cover_[j] += candidate.count(entries[j].first);
}

void WordCoverageCursor::reset() { std::fill(cover_.begin(), cover_.end(), 0); }

}  // namespace syncov
