#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "syncov/error.hpp"
#include "syncov/selection.hpp"

namespace syncov {
namespace {

constexpr int kRoot = DependencyTree::kRoot;
constexpr int kLabels = 4;

const LabelVocabulary& vocab() {
  static const LabelVocabulary v = testing::make_vocab(kLabels);
  return v;
}

ExampleRecord record(ExampleId id, std::vector<std::string> tokens, std::vector<DependencyTree::Node> nodes) {
  return testing::make_record(id, std::move(tokens), DependencyTree(std::move(nodes)), vocab());
}

std::vector<const ExampleRecord*> pointers(const std::vector<ExampleRecord>& records) {
  std::vector<const ExampleRecord*> out;
  for (const auto& r : records) out.push_back(&r);
  return out;
}

testing::OracleCandidate oracle_candidate(const ExampleRecord& r) {
  return {r.id, testing::expand_dense(*r.polynomial, kLabels), r.source_tokens};
}

void expect_trace_matches(const SelectionResult& got, const std::vector<testing::OracleStep>& want) {
  ASSERT_EQ(got.steps.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_EQ(got.steps[i].mode == StepMode::syntax, want[i].syntax) << "step " << i;
    EXPECT_EQ(*got.steps[i].candidate, want[i].candidate) << "step " << i;
    EXPECT_NEAR(got.steps[i].value, want[i].value, 1e-12) << "step " << i;
    EXPECT_EQ(got.steps[i].committed, want[i].committed) << "step " << i;
    EXPECT_EQ(got.steps[i].restart, want[i].restart) << "step " << i;
  }
}

struct RandomPool {
  ExampleRecord test;
  std::vector<ExampleRecord> pool;
};

RandomPool random_pool(testing::Rng& rng, int size) {
  auto tree = [&] { return testing::random_tree(rng, std::uniform_int_distribution<int>(1, 8)(rng), kLabels); };
  auto words = [&] { return testing::random_tokens(rng, std::uniform_int_distribution<int>(2, 7)(rng), 12); };
  RandomPool out{testing::make_record(1000, words(), tree(), vocab()), {}};
  std::vector<ExampleId> ids(size);
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), rng);
  for (int i = 0; i < size; ++i) out.pool.push_back(testing::make_record(ids[i], words(), tree(), vocab()));
  return out;
}

TEST(SelectionNames, RoundTrip) {
  for (auto s : kAllStrategies) EXPECT_EQ(parse_strategy(to_string(s)), s);
  for (auto o : {Order::syntax_first, Order::word_first}) EXPECT_EQ(parse_order(to_string(o)), o);
  for (auto r : {RelevanceNormalization::inverse_distance, RelevanceNormalization::min_max}) {
    EXPECT_EQ(parse_relevance(to_string(r)), r);
  }
  EXPECT_EQ(parse_strategy("best"), std::nullopt);
}

TEST(SelectionPlan, Validate) {
  SelectionPlan p;
  EXPECT_NO_THROW(p.validate());
  p.k = 0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.lambda = -1;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.pool_size = 2;  // smaller than k is allowed
  EXPECT_NO_THROW(p.validate());
}

TEST(Scoi, ExactCopyIsSelectedFirst) {
  testing::Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    auto rp = random_pool(rng, 12);
    // Other candidates may also reach 1.0; the copy gets the smallest id so
    // the tie rule cannot hide it.
    for (auto& c : rp.pool) c.id += 1;
    ExampleRecord copy = rp.test;
    copy.id = 0;
    rp.pool.push_back(copy);
    SelectionPlan plan;
    plan.k = 4;
    const auto r = select_scoi(rp.test, pointers(rp.pool), plan);
    EXPECT_EQ(r.selected.front(), 0);
    EXPECT_EQ(r.steps.front().value, 1.0);
  }
}

TEST(Scoi, KEqualsOneIsExhaustiveArgmax) {
  const auto test = record(100, {"x"}, {{1, 0, kRoot}, {2, 1, 1}, {3, 2, 1}});
  const std::vector<ExampleRecord> pool{
      record(0, {"y"}, {{1, 0, kRoot}, {2, 1, 1}}),
      record(1, {"y"}, {{1, 0, kRoot}, {2, 2, 1}, {3, 3, 2}}),
      record(2, {"y"}, {{1, 3, kRoot}, {2, 1, 1}, {3, 2, 1}}),
  };
  SelectionPlan plan;
  plan.k = 1;
  const auto r = select_scoi(test, pointers(pool), plan);
  double best = -1;
  ExampleId best_id = -1;
  for (const auto& c : pool) {
    const double v = syn_set_cov(*test.polynomial, TermPool(*c.polynomial));
    if (v > best) {
      best = v;
      best_id = c.id;
    }
  }
  ASSERT_EQ(r.selected.size(), 1u);
  EXPECT_EQ(r.selected[0], best_id);
  EXPECT_DOUBLE_EQ(r.steps[0].value, best);
}

TEST(Scoi, TraceMatchesReferenceLoop) {
  testing::Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rp = random_pool(rng, 20);
    std::vector<testing::OracleCandidate> oracle_pool;
    for (const auto& c : rp.pool) oracle_pool.push_back(oracle_candidate(c));
    const auto q_terms = testing::expand_dense(*rp.test.polynomial, kLabels);
    for (auto order : {Order::syntax_first, Order::word_first}) {
      SelectionPlan plan;
      plan.k = 4;
      plan.order = order;
      const auto got = select_scoi(rp.test, pointers(rp.pool), plan);
      const auto want = testing::greedy_oracle(q_terms, rp.test.source_tokens, oracle_pool, 4,
                                               order == Order::syntax_first);
      expect_trace_matches(got, want);
    }
  }
}

TEST(Scoi, CommittedValuesStrictlyIncreasePerModeBetweenRestarts) {
  testing::Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rp = random_pool(rng, 20);
    SelectionPlan plan;
    plan.k = 6;
    const auto r = select_scoi(rp.test, pointers(rp.pool), plan);
    double last_syn = -1, last_word = -1;
    for (const auto& s : r.steps) {
      if (s.restart) {
        last_syn = last_word = -1;
        continue;
      }
      double& last = s.mode == StepMode::syntax ? last_syn : last_word;
      EXPECT_GT(s.value, last);
      last = s.value;
    }
    EXPECT_EQ(std::set<ExampleId>(r.selected.begin(), r.selected.end()).size(), r.selected.size());
  }
}

TEST(Scoi, PoolSmallerThanKIsDomainError) {
  testing::Rng rng(3);
  const auto rp = random_pool(rng, 3);
  SelectionPlan plan;
  plan.k = 4;
  EXPECT_THROW(select_scoi(rp.test, pointers(rp.pool), plan), DomainError);
}

TEST(WordOnly, ExactBagFirst) {
  testing::Rng rng(5);
  auto rp = random_pool(rng, 10);
  ExampleRecord copy = rp.pool[3];
  copy.source_tokens = rp.test.source_tokens;
  copy.source_bag = rp.test.source_bag;
  copy.id = 77;
  rp.pool.push_back(copy);
  SelectionPlan plan;
  plan.strategy = Strategy::word_only;
  plan.k = 3;
  const auto r = select_single_coverage(rp.test, pointers(rp.pool), plan);
  EXPECT_EQ(r.selected.front(), 77);
  for (const auto& s : r.steps) EXPECT_EQ(s.mode, StepMode::word);
}

TEST(WordOnly, RestartWhenNothingImproves) {
  const auto test = record(100, {"a", "b"}, {{1, 0, kRoot}});
  const std::vector<ExampleRecord> pool{record(0, {"a", "b"}, {{1, 0, kRoot}}),
                                        record(1, {"b", "a", "c"}, {{1, 1, kRoot}}),
                                        record(2, {"z"}, {{1, 2, kRoot}})};
  SelectionPlan plan;
  plan.strategy = Strategy::word_only;
  plan.k = 2;
  const auto r = select_single_coverage(test, pointers(pool), plan);
  ASSERT_EQ(r.steps.size(), 3u);
  EXPECT_TRUE(r.steps[0].committed);
  EXPECT_TRUE(r.steps[1].restart);
  EXPECT_FALSE(r.steps[1].reset_other_score);
  EXPECT_EQ(*r.steps[1].candidate, 1);
  EXPECT_TRUE(r.steps[2].committed);
  EXPECT_EQ(r.selected, (std::vector<ExampleId>{0, 1}));

  std::vector<testing::OracleCandidate> oracle_pool;
  for (const auto& c : pool) oracle_pool.push_back(oracle_candidate(c));
  expect_trace_matches(r, testing::greedy_oracle(testing::expand_dense(*test.polynomial, kLabels),
                                                 test.source_tokens, oracle_pool, 2, false, true));
}

TEST(SyntaxOnly, SecondPickMaximisesMarginalCoverage) {
  testing::Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rp = random_pool(rng, 10);
    SelectionPlan plan;
    plan.strategy = Strategy::syntax_only;
    plan.k = 2;
    const auto r = select_single_coverage(rp.test, pointers(rp.pool), plan);
    ASSERT_GE(r.steps.size(), 2u);
    if (r.steps[1].restart) continue;
    const auto first = std::find_if(rp.pool.begin(), rp.pool.end(),
                                    [&](const auto& c) { return c.id == r.selected[0]; });
    double best = -1;
    for (const auto& c : rp.pool) {
      if (c.id == first->id) continue;
      TermPool z(*first->polynomial);
      z.add(*c.polynomial);
      best = std::max(best, syn_set_cov(*rp.test.polynomial, z));
    }
    EXPECT_NEAR(r.steps[1].value, best, 1e-12);
  }
}

TEST(TopkPoly, HandComputedOrdering) {
  // Test tree: root a with child b, i.e. terms {a}, {a,b}.
  const auto test = record(100, {"q"}, {{1, 0, kRoot}, {2, 1, 1}});
  const std::vector<ExampleRecord> pool{
      record(14, {"w"}, {{1, 2, kRoot}}),                // {c}: 7/3
      record(10, {"w"}, {{1, 0, kRoot}}),                // {a}: 1/3
      record(12, {"w"}, {{1, 1, kRoot}}),                // {b}: 4/3
      record(11, {"w"}, {{1, 0, kRoot}, {2, 1, 1}}),     // identical: 0
      record(13, {"w"}, {{1, 1, kRoot}, {2, 0, 1}}),     // {b}, {a,b}: 1/2
  };
  SelectionPlan plan;
  plan.strategy = Strategy::topk_poly;
  plan.k = 5;
  const auto r = select_topk_poly(test, pointers(pool), plan);
  EXPECT_EQ(r.selected, (std::vector<ExampleId>{11, 10, 13, 12, 14}));
  const std::vector<double> d{0.0, 1.0 / 3, 0.5, 4.0 / 3, 7.0 / 3};
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(r.steps[i].value, d[i], 1e-15);
}

TEST(TopkPoly, EquidistantPicksLowestIds) {
  const auto test = record(100, {"q"}, {{1, 0, kRoot}});
  std::vector<ExampleRecord> pool;
  for (ExampleId id : {8, 3, 5, 1, 9}) pool.push_back(record(id, {"w"}, {{1, 1, kRoot}}));
  SelectionPlan plan;
  plan.strategy = Strategy::topk_poly;
  plan.k = 3;
  EXPECT_EQ(select_topk_poly(test, pointers(pool), plan).selected, (std::vector<ExampleId>{1, 3, 5}));
}

TEST(Bm25Passthrough, FirstKOfPool) {
  testing::Rng rng(8);
  const auto rp = random_pool(rng, 6);
  SelectionPlan plan;
  plan.strategy = Strategy::bm25_passthrough;
  plan.k = 3;
  const auto r = select_bm25(rp.test, pointers(rp.pool), plan);
  EXPECT_EQ(r.selected, (std::vector<ExampleId>{rp.pool[0].id, rp.pool[1].id, rp.pool[2].id}));
}

TEST(Dpp, SelectsDistinctCandidatesFromPool) {
  testing::Rng rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const auto rp = random_pool(rng, 15);
    std::vector<ExampleRecord> corpus = rp.pool;
    const auto index = InvertedIndex::build(corpus);
    for (auto rel : {RelevanceNormalization::inverse_distance, RelevanceNormalization::min_max}) {
      SelectionPlan plan;
      plan.strategy = Strategy::dpp;
      plan.k = 4;
      plan.relevance = rel;
      const auto r = select_dpp(rp.test, pointers(corpus), plan, index);
      ASSERT_EQ(r.selected.size(), 4u);
      EXPECT_EQ(std::set<ExampleId>(r.selected.begin(), r.selected.end()).size(), 4u);
    }
  }
}

std::vector<ExampleRecord> id_corpus(int n) {
  std::vector<ExampleRecord> corpus(n);
  for (int i = 0; i < n; ++i) corpus[i].id = i;
  return corpus;
}

TEST(Random, SameSeedSameResult) {
  const auto corpus = id_corpus(1000);
  ExampleRecord test;
  test.id = 4;
  SelectionPlan plan;
  plan.strategy = Strategy::random;
  plan.seed = 42;
  EXPECT_EQ(select_random(test, corpus, plan).selected, select_random(test, corpus, plan).selected);
}

TEST(Random, DifferentSeedsDiffer) {
  const auto corpus = id_corpus(1000);
  ExampleRecord test;
  test.id = 0;
  SelectionPlan a, b;
  a.strategy = b.strategy = Strategy::random;
  for (auto [s1, s2] : {std::pair{1, 2}, std::pair{7, 1234}, std::pair{20240611, 99}}) {
    a.seed = s1;
    b.seed = s2;
    EXPECT_NE(select_random(test, corpus, a).selected, select_random(test, corpus, b).selected);
  }
}

TEST(Random, DependsOnTestId) {
  const auto corpus = id_corpus(1000);
  ExampleRecord t1, t2;
  t1.id = 1;
  t2.id = 2;
  SelectionPlan plan;
  plan.strategy = Strategy::random;
  EXPECT_NE(select_random(t1, corpus, plan).selected, select_random(t2, corpus, plan).selected);
}

TEST(Random, FullDrawIsPermutation) {
  auto corpus = id_corpus(50);
  for (auto& r : corpus) r.id = r.id * 2 + 1;
  ExampleRecord test;
  SelectionPlan plan;
  plan.strategy = Strategy::random;
  plan.k = 50;
  auto ids = select_random(test, corpus, plan).selected;
  std::sort(ids.begin(), ids.end());
  std::vector<ExampleId> want;
  for (const auto& r : corpus) want.push_back(r.id);
  EXPECT_EQ(ids, want);
  plan.k = 51;
  EXPECT_THROW(select_random(test, corpus, plan), DomainError);
}

}  // namespace
}  // namespace syncov
