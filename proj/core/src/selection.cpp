#include "syncov/selection.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "syncov/dpp.hpp"
#include "syncov/error.hpp"

namespace syncov {

std::string_view to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::scoi: return "scoi";
    case Strategy::syntax_only: return "syntax-only";
    case Strategy::word_only: return "word-only";
    case Strategy::topk_poly: return "topk-poly";
    case Strategy::dpp: return "dpp";
    case Strategy::bm25_passthrough: return "bm25-passthrough";
    case Strategy::random: return "random";
  }
  return "?";
}

std::string_view to_string(Order o) noexcept {
  return o == Order::word_first ? "word-first" : "syntax-first";
}

std::string_view to_string(RelevanceNormalization r) noexcept {
  return r == RelevanceNormalization::min_max ? "min-max" : "inverse-distance";
}

std::string_view to_string(StepMode m) noexcept {
  switch (m) {
    case StepMode::syntax: return "syntax";
    case StepMode::word: return "word";
    case StepMode::distance: return "distance";
    case StepMode::dpp: return "dpp";
    case StepMode::rank: return "rank";
    case StepMode::random: return "random";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view s) noexcept {
  for (Strategy st : kAllStrategies) {
    if (to_string(st) == s) return st;
  }
  if (s == "bm25") return Strategy::bm25_passthrough;
  return std::nullopt;
}

std::optional<Order> parse_order(std::string_view s) noexcept {
  if (s == "syntax-first") return Order::syntax_first;
  if (s == "word-first") return Order::word_first;
  return std::nullopt;
}

std::optional<RelevanceNormalization> parse_relevance(std::string_view s) noexcept {
  if (s == "inverse-distance") return RelevanceNormalization::inverse_distance;
  if (s == "min-max") return RelevanceNormalization::min_max;
  return std::nullopt;
}

void SelectionPlan::validate() const {
  if (k < 1) throw ConfigError("k must be at least 1");
  if (pool_size < 1) throw ConfigError("pool size must be at least 1");
  if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
  bm25.validate();
}

namespace {

SelectionResult empty_result(const ExampleRecord& test, const SelectionPlan& plan) {
  SelectionResult r;
  r.test_id = test.id;
  r.strategy = plan.strategy;
  return r;
}

void require_pool(CandidatePool pool, const SelectionPlan& plan) {
  if (pool.size() < plan.k) {
    throw DomainError("candidate pool holds " + std::to_string(pool.size()) +
                      " examples, fewer than k = " + std::to_string(plan.k));
  }
}

const Polynomial& polynomial_of(const ExampleRecord& r) {
  if (!r.polynomial) {
    throw DataError("example " + std::to_string(r.id) + " has no polynomial");
  }
  return *r.polynomial;
}

SelectionResult greedy_coverage(const ExampleRecord& test, CandidatePool pool,
                                const SelectionPlan& plan, StepMode even_mode, StepMode odd_mode) {
  require_pool(pool, plan);
  SyntaxCoverageCursor syntax(polynomial_of(test), plan.measure);
  WordCoverageCursor words(test.source_bag);
  for (const auto* c : pool) {
    if (even_mode == StepMode::syntax || odd_mode == StepMode::syntax) polynomial_of(*c);
  }

  SelectionResult result = empty_result(test, plan);
  std::vector<bool> in_z(pool.size(), false);
  double curr_syn = kSentinelLow;
  double curr_word = kSentinelLow;

  while (result.selected.size() < plan.k) {
    const StepMode mode = result.selected.size() % 2 == 0 ? even_mode : odd_mode;

    std::optional<std::size_t> best;
    double best_value = kSentinelLow;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (in_z[i]) continue;
      const double v = mode == StepMode::syntax ? syntax.coverage_with(*pool[i]->polynomial)
                                                : words.coverage_with(pool[i]->source_bag);
      if (!best || v > best_value + kCoverageTolerance ||
          (v >= best_value - kCoverageTolerance && pool[i]->id < pool[*best]->id)) {
        best = i;
        best_value = v;
      }
    }

    SelectionStep step{.mode = mode, .candidate = pool[*best]->id, .value = best_value};
    double& live = mode == StepMode::syntax ? curr_syn : curr_word;
    const double other = mode == StepMode::syntax ? curr_word : curr_syn;
    if (best_value > live + kCoverageTolerance) {
      live = best_value;
      in_z[*best] = true;
      result.selected.push_back(pool[*best]->id);
      syntax.absorb(*pool[*best]->polynomial);
      words.absorb(pool[*best]->source_bag);
      step.committed = true;
    } else {
      step.restart = true;
      step.reset_other_score = other != kSentinelLow;
      syntax.reset();
      words.reset();
      curr_syn = kSentinelLow;
      curr_word = kSentinelLow;
    }
    result.steps.push_back(step);
  }
  return result;
}

}  // namespace

SelectionResult select_scoi(const ExampleRecord& test, CandidatePool pool, const SelectionPlan& plan) {
  if (plan.order == Order::word_first) {
    return greedy_coverage(test, pool, plan, StepMode::word, StepMode::syntax);
  }
  return greedy_coverage(test, pool, plan, StepMode::syntax, StepMode::word);
}

SelectionResult select_single_coverage(const ExampleRecord& test, CandidatePool pool,
                                       const SelectionPlan& plan) {
  const StepMode mode = plan.strategy == Strategy::word_only ? StepMode::word : StepMode::syntax;
  return greedy_coverage(test, pool, plan, mode, mode);
}

namespace {

std::vector<double> distances_to(const ExampleRecord& test, CandidatePool pool) {
  const Polynomial& query = polynomial_of(test);
  std::vector<double> d;
  d.reserve(pool.size());
  for (const auto* c : pool) d.push_back(polynomial_distance(query, polynomial_of(*c)));
  return d;
}

}  // namespace

SelectionResult select_topk_poly(const ExampleRecord& test, CandidatePool pool,
                                 const SelectionPlan& plan) {
  require_pool(pool, plan);
  const auto d = distances_to(test, pool);
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (d[a] != d[b]) return d[a] < d[b];
    return pool[a]->id < pool[b]->id;
  });

  SelectionResult result = empty_result(test, plan);
  for (std::size_t i = 0; i < plan.k; ++i) {
    const std::size_t c = order[i];
    result.selected.push_back(pool[c]->id);
    result.steps.push_back({.mode = StepMode::distance, .candidate = pool[c]->id,
                            .value = d[c], .committed = true});
  }
  return result;
}

SelectionResult select_dpp(const ExampleRecord& test, CandidatePool pool, const SelectionPlan& plan,
                           const InvertedIndex& index) {
  require_pool(pool, plan);
  if (!(plan.lambda > 0.0)) throw ConfigError("lambda must be positive");

  const auto words = word_matrix(pool, test.source_bag, index, plan.bm25);
  const Eigen::MatrixXd similarity = normalized_gram(words.rows);

  const auto d = distances_to(test, pool);
  std::vector<double> relevance(d.size());
  if (plan.relevance == RelevanceNormalization::min_max) {
    const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
    const double span = *hi - *lo;
    for (std::size_t i = 0; i < d.size(); ++i) {
      relevance[i] = span > 0.0 ? (*hi - d[i]) / span : 1.0;
    }
  } else {
    for (std::size_t i = 0; i < d.size(); ++i) relevance[i] = 1.0 / (1.0 + d[i]);
  }

  const Eigen::MatrixXd kernel = relevance_kernel(similarity, relevance, plan.lambda);
  std::vector<ExampleId> ids;
  ids.reserve(pool.size());
  for (const auto* c : pool) ids.push_back(c->id);
  const auto map = greedy_map(kernel, plan.k, ids);

  SelectionResult result = empty_result(test, plan);
  result.jitter_applied = map.jitter_applied;
  for (std::size_t i : map.selected) {
    result.selected.push_back(ids[i]);
    result.steps.push_back({.mode = StepMode::dpp, .candidate = ids[i], .value = relevance[i],
                            .committed = true});
  }
  return result;
}

SelectionResult select_bm25(const ExampleRecord& test, CandidatePool pool, const SelectionPlan& plan) {
  require_pool(pool, plan);
  SelectionResult result = empty_result(test, plan);
  for (std::size_t i = 0; i < plan.k; ++i) {
    result.selected.push_back(pool[i]->id);
    result.steps.push_back({.mode = StepMode::rank, .candidate = pool[i]->id,
                            .value = static_cast<double>(i + 1), .committed = true});
  }
  return result;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform integer in [0, n) by rejection; mt19937_64's output sequence is
// fixed by the standard, unlike the distribution adaptors.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

}  // namespace

SelectionResult select_random(const ExampleRecord& test, std::span<const ExampleRecord> corpus,
                              const SelectionPlan& plan) {
  if (corpus.size() < plan.k) {
    throw DomainError("corpus holds " + std::to_string(corpus.size()) +
                      " examples, fewer than k = " + std::to_string(plan.k));
  }
  std::vector<ExampleId> ids;
  ids.reserve(corpus.size());
  for (const auto& r : corpus) ids.push_back(r.id);
  std::sort(ids.begin(), ids.end());

  std::mt19937_64 rng(splitmix64(plan.seed ^ splitmix64(static_cast<std::uint64_t>(test.id))));
  SelectionResult result = empty_result(test, plan);
  for (std::size_t i = 0; i < plan.k; ++i) {
    const std::size_t j = i + uniform_below(rng, ids.size() - i);
    std::swap(ids[i], ids[j]);
    result.selected.push_back(ids[i]);
    result.steps.push_back({.mode = StepMode::random, .candidate = ids[i], .committed = true});
  }
  return result;
}

SelectionResult select_examples(const ExampleRecord& test, CandidatePool pool,
                                std::span<const ExampleRecord> corpus, const InvertedIndex& index,
                                const SelectionPlan& plan) {
  switch (plan.strategy) {
    case Strategy::scoi: return select_scoi(test, pool, plan);
    case Strategy::syntax_only:
    case Strategy::word_only: return select_single_coverage(test, pool, plan);
    case Strategy::topk_poly: return select_topk_poly(test, pool, plan);
    case Strategy::dpp: return select_dpp(test, pool, plan, index);
    case Strategy::bm25_passthrough: return select_bm25(test, pool, plan);
    case Strategy::random: return select_random(test, corpus, plan);
  }
  throw ConfigError("unknown strategy");
}

}  // namespace syncov
