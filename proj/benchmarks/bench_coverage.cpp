#include <benchmark/benchmark.h>

#include "synthetic.hpp"
#include "syncov/coverage.hpp"

namespace {

void BM_SynSetCov(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto v = bench::vocab(37);
  const auto x = syncov::simplified_polynomial(bench::random_tree(rng, 25, 37), v);
  syncov::TermPool pool;
  for (int i = 0; i < state.range(0); ++i) pool.add(syncov::simplified_polynomial(bench::random_tree(rng, 25, 37), v));
  for (auto _ : state) benchmark::DoNotOptimize(syncov::syn_set_cov(x, pool));
}
BENCHMARK(BM_SynSetCov)->Arg(1)->Arg(4)->Arg(16);

void BM_SyntaxCursorScan(benchmark::State& state) {
  // One greedy step: score 100 candidates against a cover of 3.
  std::mt19937_64 rng(4);
  const auto v = bench::vocab(37);
  const auto x = syncov::simplified_polynomial(bench::random_tree(rng, 25, 37), v);
  std::vector<syncov::Polynomial> cands;
  for (int i = 0; i < 100; ++i) cands.push_back(syncov::simplified_polynomial(bench::random_tree(rng, 25, 37), v));
  syncov::SyntaxCoverageCursor cursor(x, syncov::CoverageMeasure::normalized_manhattan);
  for (int i = 0; i < 3; ++i) cursor.absorb(cands[i]);
  for (auto _ : state) {
    double best = 0;
    for (const auto& c : cands) best = std::max(best, cursor.coverage_with(c));
    benchmark::DoNotOptimize(best);
  }
}
BENCHMARK(BM_SyntaxCursorScan);

void BM_WordSetCov(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const syncov::TokenBag x(bench::random_words(rng, 25, 500));
  syncov::TokenBag pool;
  for (int i = 0; i < 4; ++i) pool.merge(syncov::TokenBag(bench::random_words(rng, 25, 500)));
  for (auto _ : state) benchmark::DoNotOptimize(syncov::word_set_cov(x, pool));
}
BENCHMARK(BM_WordSetCov);

}  // namespace
