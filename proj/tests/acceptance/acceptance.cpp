// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/tempdir.hpp"
#include "syncov/coverage.hpp"
#include "syncov/dpp.hpp"
#include "syncov/io/prompt.hpp"
#include "syncov/pipeline/pipeline.hpp"
#include "syncov/polynomial.hpp"
#include "syncov/retrieval.hpp"
#include "syncov/selection.hpp"
#include "syncov/tree_families.hpp"

namespace {

using namespace syncov;
using testing::Dense;
using testing::Rng;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failure messages; everything else is counted.
struct Check {
  std::size_t failures = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  Outcome outcome(std::string detail) const {
    if (failures == 0) return {true, std::move(detail)};
    return {false, std::to_string(failures) + " failure(s), first: " + first + "; " + detail};
  }
};

// ------------------------------------------------------------------ trees

struct TreeSet {
  std::vector<DependencyTree> trees;
  std::vector<int> label_counts;
};

const TreeSet& tree_set() {
  static const TreeSet set = [] {
    TreeSet s;
    Rng rng(0x5eed0001);
    for (int i = 0; i < 10000; ++i) {
      const int n = std::uniform_int_distribution<int>(1, 200)(rng);
      const int d = std::uniform_int_distribution<int>(1, 40)(rng);
      s.trees.push_back(testing::random_tree(rng, n, d));
      s.label_counts.push_back(d);
    }
    for (int n = 1; n <= 7; ++n) {
      for (const auto& parent : testing::all_parent_arrays(n)) {
        std::vector<LabelId> labels(n);
        for (auto& l : labels) l = std::uniform_int_distribution<LabelId>(0, 2)(rng);
        s.trees.push_back(testing::tree_from_parents(parent, labels));
        s.label_counts.push_back(3);
      }
    }
    return s;
  }();
  return set;
}

Outcome term_count_law() {
  const auto t0 = Clock::now();
  const auto& set = tree_set();
  const auto vocab = testing::make_vocab(40);
  Check c;
  for (std::size_t i = 0; i < set.trees.size(); ++i) {
    const auto p = simplified_polynomial(set.trees[i], vocab);
    c.expect(p.term_count() == set.trees[i].size(),
             "tree " + std::to_string(i) + ": " + std::to_string(p.term_count()) + " terms for " +
                 std::to_string(set.trees[i].size()) + " nodes");
  }
  const double s = seconds_since(t0);
  c.expect(s < 10.0, "runtime " + fmt("%.2f", s) + " s");
  return c.outcome(std::to_string(set.trees.size()) + " trees in " + fmt("%.2f", s) + " s (limit 10 s)");
}

Outcome path_oracle_equivalence() {
  const auto& set = tree_set();
  const auto vocab = testing::make_vocab(40);
  Check c;
  for (std::size_t i = 0; i < set.trees.size(); ++i) {
    const int d = set.label_counts[i];
    const auto p = simplified_polynomial(set.trees[i], vocab);
    c.expect(testing::expand_dense(p, d) == testing::path_count_oracle(set.trees[i], d),
             "tree " + std::to_string(i) + " differs from the path oracle");
  }
  return c.outcome(std::to_string(set.trees.size()) + " trees, " + std::to_string(c.failures) +
                   " mismatches");
}

Outcome complexity_separation() {
  const auto t0 = Clock::now();
  Check c;
  auto config = pipeline::default_config({{"bench.t", "2,4,8,16"}, {"bench.q", "2,3"}});
  const auto report = pipeline::run_bench(config);
  std::optional<double> orig, simp, ratio;
  std::optional<int> ratio_t;
  for (const auto& f : report.fits) {
    if (f.q == 2) {
      orig = f.original_slope;
      simp = f.simplified_slope;
    }
    if (f.q == 3) {
      ratio = f.term_ratio;
      ratio_t = f.ratio_t;
    }
  }
  c.expect(orig && *orig >= 3.0, "original slope " + (orig ? fmt("%.2f", *orig) : std::string("n/a")));
  c.expect(simp && *simp <= 2.0, "simplified slope " + (simp ? fmt("%.2f", *simp) : std::string("n/a")));
  c.expect(ratio && *ratio >= 100.0, "q=3 term ratio " + (ratio ? fmt("%.1f", *ratio) : std::string("n/a")));
  const double s = seconds_since(t0);
  c.expect(s < 60.0, "runtime " + fmt("%.2f", s) + " s");
  return c.outcome("q=2 original slope " + (orig ? fmt("%.2f", *orig) : "n/a") + " (>= 3.0), simplified slope " +
                   (simp ? fmt("%.2f", *simp) : "n/a") + " (<= 2.0); q=3 ratio " +
                   (ratio ? fmt("%.0f", *ratio) : "n/a") + "x at t=" +
                   (ratio_t ? std::to_string(*ratio_t) : "n/a") + " (>= 100x); " + fmt("%.2f", s) + " s");
}

// --------------------------------------------------------------- coverage

constexpr int kDims = 6;

Dense random_dense(Rng& rng) {
  std::uniform_int_distribution<int> e(0, 3);
  Dense v(kDims, 0);
  while (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) {
    for (auto& x : v) x = e(rng);
  }
  return v;
}

TermVector to_vector(const Dense& v) {
  std::vector<LabelPower> e;
  for (int i = 0; i < kDims; ++i) e.push_back({static_cast<LabelId>(i), static_cast<std::uint32_t>(v[i])});
  return TermVector(std::move(e));
}

Polynomial to_polynomial(const std::vector<Dense>& vs) {
  std::vector<TermVector> out;
  for (const auto& v : vs) out.push_back(to_vector(v));
  return Polynomial::from_vectors(std::move(out));
}

bool relative_close(double got, double want, double tol) {
  if (want == 0.0) return got == 0.0;
  return std::abs(got - want) <= tol * std::abs(want);
}

Outcome coverage_oracle_equivalence() {
  Rng rng(0x5eed0004);
  Check c;
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<Dense> x, z;
    const int nx = std::uniform_int_distribution<int>(1, 10)(rng);
    const int nz = std::uniform_int_distribution<int>(1, 30)(rng);
    for (int i = 0; i < nx; ++i) x.push_back(random_dense(rng));
    for (int i = 0; i < nz; ++i) z.push_back(random_dense(rng));
    const auto px = to_polynomial(x);
    const TermPool pool(to_polynomial(z));
    for (auto m : {CoverageMeasure::normalized_manhattan, CoverageMeasure::cosine}) {
      const double got = syn_set_cov(px, pool, m);
      const double want = testing::naive_syn_cov(x, z, m);
      if (want > 0) worst = std::max(worst, std::abs(got - want) / want);
      c.expect(relative_close(got, want, 1e-12), "syn_set_cov trial " + std::to_string(trial));
    }

    const auto q = testing::random_tokens(rng, nx, 15);
    std::vector<std::vector<std::string>> members;
    TokenBag bag;
    const int members_n = std::uniform_int_distribution<int>(1, 6)(rng);
    for (int j = 0; j < members_n; ++j) {
      members.push_back(testing::random_tokens(rng, std::uniform_int_distribution<int>(1, 5)(rng), 15));
      bag.merge(TokenBag(members.back()));
    }
    const double got = word_set_cov(TokenBag(q), bag);
    const double want = testing::naive_word_cov(q, members);
    if (want > 0) worst = std::max(worst, std::abs(got - want) / want);
    c.expect(relative_close(got, want, 1e-12), "word_set_cov trial " + std::to_string(trial));
  }
  return c.outcome("10000 instances, both measures; worst relative error " + fmt("%.1e", worst) +
                   " (limit 1e-12)");
}

Outcome coverage_invariants() {
  Rng rng(0x5eed0005);
  Check c;
  const auto vocab = testing::make_vocab(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto x = simplified_polynomial(testing::random_tree(rng, std::uniform_int_distribution<int>(1, 12)(rng), 5), vocab);
    const TokenBag xw(testing::random_tokens(rng, std::uniform_int_distribution<int>(1, 10)(rng), 12));
    for (auto m : {CoverageMeasure::normalized_manhattan, CoverageMeasure::cosine}) {
      TermPool self(x);
      self.add(simplified_polynomial(testing::random_tree(rng, 4, 5), vocab));
      c.expect(syn_set_cov(x, self, m) == 1.0, "syntactic self-cover below 1");
      TermPool pool;
      double last = 0.0;
      for (int j = 0; j < 5; ++j) {
        pool.add(simplified_polynomial(testing::random_tree(rng, std::uniform_int_distribution<int>(1, 8)(rng), 5), vocab));
        const double v = syn_set_cov(x, pool, m);
        c.expect(v >= last, "syn_set_cov decreased as the pool grew");
        c.expect(v >= 0.0 && v <= 1.0, "syn_set_cov outside [0, 1]");
        last = v;
      }
    }
    c.expect(word_set_cov(xw, xw) == 1.0, "lexical self-cover below 1");
    TokenBag bag;
    double last = 0.0;
    for (int j = 0; j < 5; ++j) {
      bag.merge(TokenBag(testing::random_tokens(rng, 4, 12)));
      const double v = word_set_cov(xw, bag);
      c.expect(v >= last, "word_set_cov decreased as the pool grew");
      c.expect(v >= 0.0 && v <= 1.0, "word_set_cov outside [0, 1]");
      last = v;
    }
  }
  const TermVector ab({{0, 1}, {1, 2}});
  const TermVector a = TermVector::single(0);
  c.expect(std::abs(term_similarity(ab, ab) - 1.0) <= 1e-12, "c(s, s) != 1");
  c.expect(std::abs(term_similarity(a, TermVector::single(1)) - 1.0 / 3.0) <= 1e-12, "c({a},{b}) != 1/3");
  c.expect(std::abs(term_similarity(a, TermVector::single(0, 2)) - 0.5) <= 1e-12, "c({a},{a:2}) != 1/2");
  c.expect(std::abs(term_similarity(a, TermVector::single(0, 2), CoverageMeasure::cosine) - 1.0) <= 1e-12,
           "cosine of parallel vectors != 1");
  return c.outcome("2000 randomized instances x 2 measures; hand cases 1, 1/3, 1/2");
}

// -------------------------------------------------------------- selection

constexpr int kSelLabels = 4;

struct SynthPool {
  ExampleRecord test;
  std::vector<ExampleRecord> pool;
};

SynthPool synth_pool(Rng& rng, int size, const LabelVocabulary& vocab) {
  auto tree = [&] {
    return testing::random_tree(rng, std::uniform_int_distribution<int>(1, 8)(rng), kSelLabels);
  };
  auto words = [&] { return testing::random_tokens(rng, std::uniform_int_distribution<int>(2, 7)(rng), 12); };
  SynthPool out{testing::make_record(100000, words(), tree(), vocab), {}};
  std::vector<ExampleId> ids(size);
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), rng);
  for (int i = 0; i < size; ++i) out.pool.push_back(testing::make_record(ids[i], words(), tree(), vocab));
  return out;
}

std::vector<const ExampleRecord*> pointers(const std::vector<ExampleRecord>& rs) {
  std::vector<const ExampleRecord*> out;
  for (const auto& r : rs) out.push_back(&r);
  return out;
}

bool same_trace(const SelectionResult& got, const std::vector<testing::OracleStep>& want) {
  if (got.steps.size() != want.size()) return false;
  for (std::size_t i = 0; i < want.size(); ++i) {
    const auto& g = got.steps[i];
    const auto& w = want[i];
    if ((g.mode == StepMode::syntax) != w.syntax || *g.candidate != w.candidate ||
        std::abs(g.value - w.value) > 1e-12 || g.committed != w.committed || g.restart != w.restart) {
      return false;
    }
  }
  return true;
}

Outcome algorithm_fidelity() {
  Rng rng(0x5eed0006);
  const auto vocab = testing::make_vocab(kSelLabels);
  Check c;
  std::size_t restarts = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto sp = synth_pool(rng, 20, vocab);
    std::vector<testing::OracleCandidate> oracle_pool;
    for (const auto& r : sp.pool) {
      oracle_pool.push_back({r.id, testing::expand_dense(*r.polynomial, kSelLabels), r.source_tokens});
    }
    const auto q_terms = testing::expand_dense(*sp.test.polynomial, kSelLabels);
    for (auto order : {Order::syntax_first, Order::word_first}) {
      SelectionPlan plan;
      plan.k = 4;
      plan.order = order;
      const auto got = select_scoi(sp.test, pointers(sp.pool), plan);
      const auto want = testing::greedy_oracle(q_terms, sp.test.source_tokens, oracle_pool, 4,
                                               order == Order::syntax_first);
      c.expect(same_trace(got, want), "trace mismatch on pool " + std::to_string(trial) + " (" +
                                          std::string(to_string(order)) + ")");
      double last_syn = kSentinelLow, last_word = kSentinelLow;
      for (const auto& s : got.steps) {
        if (s.restart) {
          ++restarts;
          last_syn = last_word = kSentinelLow;
          continue;
        }
        double& last = s.mode == StepMode::syntax ? last_syn : last_word;
        c.expect(s.value > last, "committed coverage did not increase on pool " + std::to_string(trial));
        last = s.value;
      }
    }
  }
  c.expect(restarts > 0, "no restart events exercised");
  return c.outcome("1000 pools x 2 orders, 20 candidates, k=4; " + std::to_string(restarts) +
                   " restart events matched");
}

Outcome ablation_consistency() {
  Rng rng(0x5eed0007);
  const auto vocab = testing::make_vocab(kSelLabels);
  Check c;
  int pools = 0;
  while (pools < 1000) {
    auto sp = synth_pool(rng, 19, vocab);
    ExampleRecord dominant = sp.test;
    dominant.id = std::uniform_int_distribution<ExampleId>(0, 19)(rng);
    for (auto& r : sp.pool) {
      if (r.id >= dominant.id) ++r.id;
    }
    // Strict domination: every other candidate is below 1.0 on both coverages.
    bool strict = true;
    for (const auto& r : sp.pool) {
      strict &= syn_set_cov(*sp.test.polynomial, TermPool(*r.polynomial)) < 1.0;
      strict &= word_set_cov(sp.test.source_bag, r.source_bag) < 1.0;
    }
    if (!strict) continue;
    sp.pool.insert(sp.pool.begin() + std::uniform_int_distribution<int>(0, 19)(rng), dominant);
    ++pools;
    const auto ptrs = pointers(sp.pool);
    SelectionPlan plan;
    plan.k = 4;
    c.expect(select_scoi(sp.test, ptrs, plan).selected.front() == dominant.id, "scoi");
    plan.order = Order::word_first;
    c.expect(select_scoi(sp.test, ptrs, plan).selected.front() == dominant.id, "scoi word-first");
    plan.order = Order::syntax_first;
    plan.strategy = Strategy::syntax_only;
    c.expect(select_single_coverage(sp.test, ptrs, plan).selected.front() == dominant.id, "syntax-only");
    plan.strategy = Strategy::word_only;
    c.expect(select_single_coverage(sp.test, ptrs, plan).selected.front() == dominant.id, "word-only");
  }
  return c.outcome("1000 pools with a strictly dominant candidate; scoi (both orders), syntax-only, word-only");
}

// -------------------------------------------------------------------- DPP

std::vector<ExampleId> iota_ids(std::size_t n) {
  std::vector<ExampleId> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

Outcome dpp_optimality() {
  Rng rng(0x5eed0008);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Check c;
  int orthogonal = 0;
  for (int trial = 0; trial < 200; ++trial) {
    for (std::size_t n = 1; n <= 8; ++n) {
      std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
      for (std::size_t i = 0; i < n; ++i) rows[i][i] = 0.1 + u(rng);
      std::vector<double> rel(n);
      for (auto& r : rel) r = u(rng);
      const auto kernel = relevance_kernel(normalized_gram(rows), rel, 0.5);
      for (std::size_t k = 1; k <= std::min<std::size_t>(3, n); ++k) {
        const auto got = greedy_map(kernel, k, iota_ids(n));
        const auto best = testing::exhaustive_map(kernel, k);
        ++orthogonal;
        c.expect(std::abs(got.log_det - best.log_det) <= 1e-9,
                 "orthogonal pool n=" + std::to_string(n) + " k=" + std::to_string(k));
      }
    }
  }

  double worst_gap = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 8)(rng);
    std::vector<std::vector<double>> rows(n, std::vector<double>(5));
    for (auto& row : rows) {
      for (auto& v : row) v = u(rng) < 0.4 ? 0.0 : u(rng);
      row[trial % 5] += 0.05;
    }
    std::vector<double> rel(n);
    for (auto& r : rel) r = u(rng);
    const auto kernel = relevance_kernel(normalized_gram(rows), rel, 0.5);
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto got = greedy_map(kernel, k, iota_ids(n));
      const auto best = testing::exhaustive_map(kernel, k);
      c.expect(got.log_det <= best.log_det + 1e-9, "greedy above the optimum on random pool " + std::to_string(trial));
      worst_gap = std::max(worst_gap, best.log_det - got.log_det);
    }
  }

  int duplicate_pools = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 8)(rng);
    // Generic vectors in n dimensions are independent; one row is then copied.
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (auto& row : rows) {
      for (auto& v : row) v = u(rng);
    }
    const std::size_t a = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    std::size_t b = std::uniform_int_distribution<std::size_t>(0, n - 2)(rng);
    if (b >= a) ++b;
    rows[b] = rows[a];
    std::vector<double> rel(n);
    for (auto& r : rel) r = u(rng);
    const auto kernel = relevance_kernel(normalized_gram(rows), rel, 0.5);
    for (std::size_t k = 2; k <= n - 1; ++k) {
      const auto got = greedy_map(kernel, k, iota_ids(n));
      const bool both = std::count(got.selected.begin(), got.selected.end(), a) +
                            std::count(got.selected.begin(), got.selected.end(), b) == 2;
      c.expect(!both, "duplicates co-selected on pool " + std::to_string(trial));
    }
    ++duplicate_pools;
  }
  return c.outcome(std::to_string(orthogonal) + " orthogonal cases equal the optimum; 1000 random pools never above it (largest shortfall " +
                   fmt("%.3g", worst_gap) + "); " + std::to_string(duplicate_pools) + " duplicate pools");
}

// ------------------------------------------------------------------- BM25

ExampleRecord doc(ExampleId id, std::vector<std::string> tokens) {
  ExampleRecord r;
  r.id = id;
  r.source_bag = TokenBag(tokens);
  r.source_tokens = std::move(tokens);
  return r;
}

std::string zipf_word(Rng& rng, std::discrete_distribution<int>& d) { return "w" + std::to_string(d(rng)); }

Outcome bm25_correctness() {
  Check c;
  // Fixtures evaluated by hand with k1 = 1.5, b = 0.75.
  {
    const std::vector<ExampleRecord> docs{doc(0, {"a", "b", "a"}), doc(1, {"b", "c"}), doc(2, {"c"})};
    const auto index = InvertedIndex::build(docs);
    const TokenBag qa(std::vector<std::string>{"a"});
    const TokenBag qb(std::vector<std::string>{"b"});
    c.expect(std::abs(bm25_score(index, qa, 0) - 1.2071744652452017) <= 1e-9, "fixture a/doc0");
    c.expect(std::abs(bm25_score(index, qb, 0) - 0.3836764320373352) <= 1e-9, "fixture b/doc0");
    c.expect(std::abs(bm25_score(index, qb, 1) - 0.4700036292457356) <= 1e-9, "fixture b/doc1");
    c.expect(bm25_score(index, qa, 2) == 0.0, "fixture a/doc2 nonzero");
  }

  Rng rng(0x5eed0009);
  std::vector<double> weights(5000);
  for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = 1.0 / static_cast<double>(i + 1);
  std::discrete_distribution<int> zipf(weights.begin(), weights.end());
  std::vector<ExampleRecord> corpus;
  for (int i = 0; i < 10000; ++i) {
    std::vector<std::string> tokens;
    const int len = std::uniform_int_distribution<int>(5, 40)(rng);
    for (int j = 0; j < len; ++j) tokens.push_back(zipf_word(rng, zipf));
    corpus.push_back(doc(i, std::move(tokens)));
  }
  const auto index = InvertedIndex::build(corpus);

  std::vector<TokenBag> queries;
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::string> q;
    const int len = std::uniform_int_distribution<int>(3, 25)(rng);
    for (int j = 0; j < len; ++j) q.push_back(zipf_word(rng, zipf));
    queries.push_back(TokenBag(q));
  }

  const auto t0 = Clock::now();
  std::size_t returned = 0;
  for (const auto& q : queries) returned += bm25_topk(index, q, 100).size();
  const double ms_per_query = seconds_since(t0) * 1000.0 / static_cast<double>(queries.size());
  c.expect(ms_per_query < 5.0, "latency " + fmt("%.3f", ms_per_query) + " ms");
  c.expect(returned > 0, "no results at all");

  for (std::size_t i = 0; i < 200; ++i) {
    const auto top100 = bm25_topk(index, queries[i], 100);
    const auto top200 = bm25_topk(index, queries[i], 200);
    c.expect(top100.size() <= top200.size() && std::equal(top100.begin(), top100.end(), top200.begin()),
             "top-100 not a prefix of top-200 for query " + std::to_string(i));
    std::set<ExampleId> matched;
    for (const auto& [tok, n] : queries[i].entries()) {
      for (const auto& p : index.postings(tok)) matched.insert(index.doc_ids()[p.doc]);
    }
    for (int probe = 0; probe < 20; ++probe) {
      const ExampleId id = std::uniform_int_distribution<ExampleId>(0, 9999)(rng);
      if (!matched.count(id)) c.expect(bm25_score(index, queries[i], id) == 0.0, "non-matching doc scored");
    }
  }

  // Monotonicity: one more occurrence of a query token never lowers the score.
  // Single-token queries take the occurrence as an insertion (the document
  // grows); multi-token queries take it as a replacement of a non-query token
  // so the other terms' length normalisation is untouched.
  int monotone_checks = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const ExampleId id = std::uniform_int_distribution<ExampleId>(0, 9999)(rng);
    const auto& tokens = corpus[id].source_tokens;
    const std::string tok = tokens[std::uniform_int_distribution<std::size_t>(0, tokens.size() - 1)(rng)];
    const TokenBag single(std::vector<std::string>{tok});
    const double before_single = bm25_score(index, single, id);

    const auto& q = queries[trial];
    std::vector<std::string> qtokens;
    for (const auto& [t, n] : q.entries()) qtokens.push_back(t);
    const double before_multi = bm25_score(index, q, id);

    auto grown = corpus;
    grown[id].source_tokens.push_back(tok);
    grown[id].source_bag = TokenBag(grown[id].source_tokens);
    const double after_single = bm25_score(InvertedIndex::build(grown), single, id);
    c.expect(after_single >= before_single, "insertion lowered a single-token score");

    auto replaced = corpus;
    auto& rt = replaced[id].source_tokens;
    const auto victim = std::find_if(rt.begin(), rt.end(), [&](const std::string& t) { return !q.count(t); });
    if (victim != rt.end()) {
      *victim = qtokens[std::uniform_int_distribution<std::size_t>(0, qtokens.size() - 1)(rng)];
      replaced[id].source_bag = TokenBag(rt);
      const double after_multi = bm25_score(InvertedIndex::build(replaced), q, id);
      c.expect(after_multi >= before_multi, "replacement lowered a multi-token score");
    }
    monotone_checks += 2;
  }
  return c.outcome("hand fixtures at 1e-9; 10000 docs: prefix and zero-score checks on 200 queries, " +
                   std::to_string(monotone_checks) + " monotonicity checks; " + fmt("%.3f", ms_per_query) +
                   " ms/query (limit 5 ms)");
}

// -------------------------------------------------------------- end to end

Outcome end_to_end_determinism() {
  Check c;
  const std::filesystem::path demo = std::filesystem::path(SYNCOV_SOURCE_DIR) / "data" / "demo" / "demo.conf";
  testing::TempDir dir;
  std::vector<std::string> selections, prompts;
  for (const char* run : {"a", "b"}) {
    const auto config = pipeline::load_config(
        demo, {{"cache_dir", (dir / (std::string("cache-") + run)).string()},
               {"output_dir", (dir / (std::string("out-") + run)).string()},
               {"strategy", "all"}});
    pipeline::run_build(config);
    const auto report = pipeline::run_select(config);
    selections.push_back(testing::read_file(report.selections));
    prompts.push_back(testing::read_file(report.prompts));
  }
  c.expect(!selections[0].empty() && selections[0] == selections[1], "selection files differ");
  c.expect(!prompts[0].empty() && prompts[0] == prompts[1], "prompt files differ");

  const std::vector<io::ExamplePair> pairs{{"Der Hund schläft.", "The dog sleeps."},
                                           {"Ich lese ein Buch.", "I am reading a book."},
                                           {"Wir gehen nach Hause.", "We are going home."},
                                           {"Das Wetter ist heute schön.", "The weather is nice today."}};
  const std::string test = "Die Katze trinkt Milch.";
  auto golden = [](const std::string& name) {
    return testing::read_file(std::string(SYNCOV_GOLDEN_DIR) + "/" + name);
  };
  const io::PromptTemplate delim{};
  const io::PromptTemplate instr{.style = io::PromptStyle::instruction};
  c.expect(io::render_prompt(delim, {}, test, 0) == golden("prompt_delimiter_k0.txt"), "k=0 delimiter golden");
  c.expect(io::render_prompt(delim, {pairs[0]}, test, 1) == golden("prompt_delimiter_k1.txt"), "k=1 delimiter golden");
  c.expect(io::render_prompt(delim, pairs, test, 4) == golden("prompt_delimiter_k4.txt"), "k=4 delimiter golden");
  c.expect(io::render_prompt(instr, pairs, test, 4) == golden("prompt_instruction_k4.txt"), "k=4 instruction golden");
  return c.outcome("two build+select runs over all 7 strategies byte-identical (" +
                   std::to_string(selections[0].size()) + " + " + std::to_string(prompts[0].size()) +
                   " bytes); 4 prompt goldens");
}

Outcome throughput() {
  Rng rng(0x5eed0011);
  const int labels = 37;
  const auto vocab = testing::make_vocab(labels);
  std::vector<DependencyTree> trees;
  for (int i = 0; i < 20000; ++i) trees.push_back(testing::random_tree(rng, 25, labels));
  std::uint64_t sink = 0;
  for (int i = 0; i < 2000; ++i) sink += simplified_polynomial(trees[i], vocab).distinct_terms();
  std::vector<double> rates;
  for (int rep = 0; rep < 5; ++rep) {
    const auto t0 = Clock::now();
    for (const auto& t : trees) sink += simplified_polynomial(t, vocab).distinct_terms();
    rates.push_back(static_cast<double>(trees.size()) / seconds_since(t0));
  }
  std::sort(rates.begin(), rates.end());
  const double median = rates[rates.size() / 2];
  Check c;
  c.expect(sink > 0, "no work done");
  c.expect(median >= 50000.0, "median rate " + fmt("%.0f", median) + " sentences/s");
  return c.outcome("median of 5 passes over 20000 trees of 25 nodes: " + fmt("%.0f", median) +
                   " sentences/s, single thread (limit 50000)");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"term-count law", term_count_law},
      {"path-oracle equivalence", path_oracle_equivalence},
      {"complexity separation", complexity_separation},
      {"coverage oracle equivalence", coverage_oracle_equivalence},
      {"coverage invariants", coverage_invariants},
      {"greedy loop fidelity", algorithm_fidelity},
      {"strategy ablation consistency", ablation_consistency},
      {"DPP optimality at small scale", dpp_optimality},
      {"BM25 correctness", bm25_correctness},
      {"end-to-end determinism", end_to_end_determinism},
      {"throughput", throughput},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
