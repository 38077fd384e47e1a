#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "syncov/coverage.hpp"
#include "syncov/example.hpp"
#include "syncov/retrieval.hpp"

namespace syncov {

enum class Strategy { scoi, syntax_only, word_only, topk_poly, dpp, bm25_passthrough, random };
enum class Order { syntax_first, word_first };
enum class RelevanceNormalization { inverse_distance, min_max };

inline constexpr Strategy kAllStrategies[] = {
    Strategy::scoi,      Strategy::syntax_only,      Strategy::word_only, Strategy::topk_poly,
    Strategy::dpp,       Strategy::bm25_passthrough, Strategy::random};

std::string_view to_string(Strategy s) noexcept;
std::string_view to_string(Order o) noexcept;
std::string_view to_string(RelevanceNormalization r) noexcept;
std::optional<Strategy> parse_strategy(std::string_view s) noexcept;
std::optional<Order> parse_order(std::string_view s) noexcept;
std::optional<RelevanceNormalization> parse_relevance(std::string_view s) noexcept;

struct SelectionPlan {
  Strategy strategy = Strategy::scoi;
  std::size_t k = 4;
  Order order = Order::syntax_first;
  CoverageMeasure measure = CoverageMeasure::normalized_manhattan;
  std::size_t pool_size = 100;
  double lambda = 0.5;
  RelevanceNormalization relevance = RelevanceNormalization::inverse_distance;
  Bm25Params bm25;
  std::uint64_t seed = 0;

  /// Throws ConfigError. pool_size < k is allowed here: the pipeline tops
  /// short pools up from the BM25 ranking and flags the result.
  void validate() const;
};

/// Coverage values closer than this are treated as equal by the greedy
/// loops, so ties between mathematically equal coverages do not depend on
/// floating-point summation order.
inline constexpr double kCoverageTolerance = 1e-12;

/// Stands in for -inf: strictly below every attainable coverage.
inline constexpr double kSentinelLow = -std::numeric_limits<double>::infinity();

enum class StepMode { syntax, word, distance, dpp, rank, random };
std::string_view to_string(StepMode m) noexcept;

struct SelectionStep {
  StepMode mode = StepMode::syntax;
  std::optional<ExampleId> candidate;  // argmax candidate (committed or not)
  double value = 0.0;                  // coverage / distance / relevance behind the pick
  bool committed = false;
  bool restart = false;
  /// Set on a restart that also discarded the other mode's live score, which
  /// a literal reading of the alternating loop would have kept.
  bool reset_other_score = false;

  friend bool operator==(const SelectionStep&, const SelectionStep&) = default;
};

struct SelectionResult {
  ExampleId test_id = 0;
  Strategy strategy = Strategy::scoi;
  std::vector<ExampleId> selected;  // selection order
  std::vector<SelectionStep> steps;
  bool pool_fallback = false;   // pool was topped up beyond the BM25 matches
  bool jitter_applied = false;  // DPP kernel needed diagonal jitter
};

/// Candidate pool, in BM25 rank order. Records must outlive the call.
using CandidatePool = std::span<const ExampleRecord* const>;

/// Alternating greedy set-coverage selection. Even |Z| steps maximise
/// syntactic coverage and odd steps lexical coverage (swapped for
/// word-first). A candidate is committed only if it raises that mode's live
/// score; otherwise the live cover is emptied, both live scores drop to
/// kSentinelLow, and the step is retried. Ties go to the smaller example id.
SelectionResult select_scoi(const ExampleRecord& test, CandidatePool pool, const SelectionPlan& plan);

/// Same loop with one coverage for every step (plan.strategy picks which).
SelectionResult select_single_coverage(const ExampleRecord& test, CandidatePool pool,
                                       const SelectionPlan& plan);

/// k candidates with the smallest polynomial distance to the test input.
SelectionResult select_topk_poly(const ExampleRecord& test, CandidatePool pool,
                                 const SelectionPlan& plan);

/// DPP MAP selection: lexical diversity from BM25 word vectors, syntactic
/// relevance from polynomial distance.
SelectionResult select_dpp(const ExampleRecord& test, CandidatePool pool, const SelectionPlan& plan,
                           const InvertedIndex& index);

/// First k of the pool, i.e. plain BM25 top-k.
SelectionResult select_bm25(const ExampleRecord& test, CandidatePool pool, const SelectionPlan& plan);

/// k ids drawn uniformly without replacement from the whole corpus. The draw
/// depends only on (plan.seed, test.id) and is portable across platforms.
SelectionResult select_random(const ExampleRecord& test, std::span<const ExampleRecord> corpus,
                              const SelectionPlan& plan);

/// Dispatch on plan.strategy.
SelectionResult select_examples(const ExampleRecord& test, CandidatePool pool,
                                std::span<const ExampleRecord> corpus, const InvertedIndex& index,
                                const SelectionPlan& plan);

}  // namespace syncov
