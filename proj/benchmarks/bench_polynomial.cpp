#include <benchmark/benchmark.h>

#include "synthetic.hpp"
#include "syncov/original_polynomial.hpp"
#include "syncov/tree_families.hpp"

namespace {

void BM_SimplifiedRandomTree(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto v = bench::vocab(37);
  const auto tree = bench::random_tree(rng, static_cast<int>(state.range(0)), 37);
  for (auto _ : state) benchmark::DoNotOptimize(syncov::simplified_polynomial(tree, v));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SimplifiedRandomTree)->Arg(10)->Arg(25)->Arg(60)->Arg(200);

void BM_SimplifiedChainFamily(benchmark::State& state) {
  syncov::LabelVocabulary v;
  const auto tree = syncov::binary_chain_tree(static_cast<int>(state.range(0)), 2, v);
  for (auto _ : state) benchmark::DoNotOptimize(syncov::simplified_polynomial(tree, v));
  state.counters["nodes"] = static_cast<double>(tree.size());
}
BENCHMARK(BM_SimplifiedChainFamily)->RangeMultiplier(2)->Range(2, 16);

void BM_OriginalChainFamily(benchmark::State& state) {
  syncov::LabelVocabulary v;
  const auto tree = syncov::binary_chain_tree(static_cast<int>(state.range(0)), 2, v);
  std::uint64_t terms = 0;
  for (auto _ : state) {
    auto r = syncov::original_polynomial(tree, v);
    terms = r.polynomial.terms.term_count();
    benchmark::DoNotOptimize(r);
  }
  state.counters["nodes"] = static_cast<double>(tree.size());
  state.counters["terms"] = static_cast<double>(terms);
}
BENCHMARK(BM_OriginalChainFamily)->RangeMultiplier(2)->Range(2, 16)->Unit(benchmark::kMicrosecond);

void BM_PolynomialDistance(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto v = bench::vocab(37);
  const auto p = syncov::simplified_polynomial(bench::random_tree(rng, 25, 37), v);
  const auto q = syncov::simplified_polynomial(bench::random_tree(rng, 25, 37), v);
  for (auto _ : state) benchmark::DoNotOptimize(syncov::polynomial_distance(p, q));
}
BENCHMARK(BM_PolynomialDistance);

}  // namespace
