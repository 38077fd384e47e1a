#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "syncov/io/cache.hpp"
#include "syncov/pipeline/config.hpp"
#include "syncov/retrieval.hpp"
#include "syncov/selection.hpp"

namespace syncov::pipeline {

std::string_view toolkit_version() noexcept;

// ---------------------------------------------------------------- build

struct StageReport {
  std::string name;
  bool skipped = false;
  double seconds = 0.0;
};

struct BuildReport {
  std::vector<StageReport> stages;
  std::size_t corpus_records = 0;
  std::size_t test_records = 0;
  std::size_t removed = 0;
  std::size_t labels = 0;
};

/// ingest -> filter -> vocabulary -> polynomials -> index. Each cache is
/// keyed by the digests of what it was made from; a stage whose key and
/// output digests match the previous manifest is skipped. Nothing is
/// written before ingestion succeeds, and every file is replaced atomically.
BuildReport run_build(const Config& config, std::ostream* log = nullptr);

// ---------------------------------------------------------------- select

/// Caches produced by run_build, loaded and checked against its manifest.
struct Workspace {
  io::CorpusCache data;
  InvertedIndex index;
  std::vector<std::string> input_digests;  // "file sha256" lines
};

/// Throws CacheError with a hint to run build when anything is missing or
/// stale.
Workspace load_workspace(const Config& config);

struct Pool {
  std::vector<const ExampleRecord*> candidates;
  bool fallback = false;
};

/// BM25 top `pool_size` candidates. When that is fewer than k, the pool is
/// extended with later BM25 ranks and then with non-matching records in
/// ascending id order, and `fallback` is set.
Pool candidate_pool(const Workspace& ws, const ExampleRecord& test, const SelectionPlan& plan);

struct SelectReport {
  std::size_t tests = 0;
  std::size_t records = 0;
  std::size_t fallbacks = 0;
  std::filesystem::path selections;
  std::filesystem::path prompts;
  std::filesystem::path manifest;
};

/// One selection record and one prompt per (test input, strategy), written
/// as JSON lines in input order whatever the worker count.
SelectReport run_select(const Config& config, std::ostream* log = nullptr);

nlohmann::ordered_json selection_to_json(const SelectionResult& r, std::size_t pool_size);

// ---------------------------------------------------------------- bench

struct BenchRow {
  int q = 0;
  int t = 0;
  std::size_t nodes = 0;
  std::uint64_t simplified_terms = 0;
  std::uint64_t simplified_work = 0;
  double simplified_seconds = 0.0;
  bool original_ok = false;  // false: term budget exhausted
  std::uint64_t original_terms = 0;
  std::uint64_t multiplications = 0;
  std::uint64_t additions = 0;
  std::uint64_t peak_terms = 0;
  double original_seconds = 0.0;
  std::string note;
};

struct BenchFit {
  int q = 0;
  std::optional<double> original_slope;    // log multiplications vs log nodes
  std::optional<double> simplified_slope;  // log work vs log nodes
  std::optional<double> term_ratio;        // at the largest t under budget
  std::optional<int> ratio_t;
};

struct BenchReport {
  std::uint64_t term_budget = 0;
  std::vector<BenchRow> rows;
  std::vector<BenchFit> fits;
};

BenchReport run_bench(const Config& config);
nlohmann::ordered_json bench_to_json(const BenchReport& r);
std::string bench_table(const BenchReport& r);

/// Least-squares slope of log(y) on log(x); nullopt with fewer than two
/// usable points.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------- inspect

struct InspectRequest {
  ExampleId id = 0;
  bool test_side = true;  // look the id up among test inputs or the corpus
  std::optional<std::size_t> pool_size;
};

void run_inspect(const Config& config, const InspectRequest& request, std::ostream& out);

}  // namespace syncov::pipeline
