#include <benchmark/benchmark.h>

#include "synthetic.hpp"
#include "syncov/selection.hpp"

namespace {

struct Setup {
  syncov::LabelVocabulary v = bench::vocab(37);
  syncov::ExampleRecord test;
  std::vector<syncov::ExampleRecord> pool;
  std::vector<const syncov::ExampleRecord*> ptrs;
  syncov::InvertedIndex index;

  Setup() {
    std::mt19937_64 rng(8);
    test = bench::record(rng, 100000, 25, 25, v);
    for (int i = 0; i < 100; ++i) pool.push_back(bench::record(rng, i, 25, 25, v));
    for (const auto& r : pool) ptrs.push_back(&r);
    index = syncov::InvertedIndex::build(pool);
  }
};

const Setup& setup() {
  static const Setup s;
  return s;
}

void run(benchmark::State& state, syncov::Strategy strategy) {
  const auto& s = setup();
  syncov::SelectionPlan plan;
  plan.strategy = strategy;
  for (auto _ : state) {
    benchmark::DoNotOptimize(syncov::select_examples(s.test, s.ptrs, s.pool, s.index, plan));
  }
}

void BM_Scoi(benchmark::State& state) { run(state, syncov::Strategy::scoi); }
void BM_TopkPoly(benchmark::State& state) { run(state, syncov::Strategy::topk_poly); }
void BM_Dpp(benchmark::State& state) { run(state, syncov::Strategy::dpp); }
BENCHMARK(BM_Scoi)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TopkPoly)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Dpp)->Unit(benchmark::kMicrosecond);

}  // namespace
