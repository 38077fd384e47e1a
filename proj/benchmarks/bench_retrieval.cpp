#include <benchmark/benchmark.h>

#include "synthetic.hpp"
#include "syncov/retrieval.hpp"

namespace {

const std::vector<syncov::ExampleRecord>& corpus(std::size_t n) {
  static std::vector<syncov::ExampleRecord> docs;
  if (docs.size() != n) {
    std::mt19937_64 rng(6);
    docs.clear();
    for (std::size_t i = 0; i < n; ++i) {
      syncov::ExampleRecord r;
      r.id = static_cast<syncov::ExampleId>(i);
      r.source_tokens = bench::random_words(rng, 20, 5000);
      r.source_bag = syncov::TokenBag(r.source_tokens);
      docs.push_back(std::move(r));
    }
  }
  return docs;
}

void BM_IndexBuild(benchmark::State& state) {
  const auto& docs = corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(syncov::InvertedIndex::build(docs));
}
BENCHMARK(BM_IndexBuild)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Bm25Top100(benchmark::State& state) {
  const auto& docs = corpus(static_cast<std::size_t>(state.range(0)));
  const auto index = syncov::InvertedIndex::build(docs);
  std::mt19937_64 rng(7);
  std::vector<syncov::TokenBag> queries;
  for (int i = 0; i < 64; ++i) queries.emplace_back(bench::random_words(rng, 20, 5000));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(syncov::bm25_topk(index, queries[i++ % queries.size()], 100));
}
BENCHMARK(BM_Bm25Top100)->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);

}  // namespace
