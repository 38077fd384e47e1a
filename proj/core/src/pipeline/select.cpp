#include <cmath>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "common.hpp"
#include "parallel.hpp"
#include "syncov/io/prompt.hpp"
#include "syncov/pipeline/digest.hpp"
#include "syncov/pipeline/pipeline.hpp"

namespace syncov::pipeline {
namespace {

namespace fs = std::filesystem;

constexpr const char* kSelections = "selections.jsonl";
constexpr const char* kPrompts = "prompts.jsonl";

[[noreturn]] void not_built(const fs::path& dir, const std::string& why) {
  throw CacheError("caches in " + dir.string() + " are not usable (" + why +
                   "); run `syncov build` with the same config first");
}

template <typename F>
void read_cache(const fs::path& path, F&& f) {
  std::ifstream in(path, std::ios::binary);
  if (!in) not_built(path.parent_path(), "cannot open " + path.filename().string());
  f(in);
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

Workspace load_workspace(const Config& config) {
  const fs::path dir = config.cache_dir;
  const auto manifest = read_json(dir / kManifest);
  if (!manifest || !manifest->contains("outputs")) not_built(dir, "no build manifest");

  Workspace ws;
  for (const char* name : {kCorpusCache, kCorpusPolys, kTestPolys, kIndexCache}) {
    const auto path = dir / name;
    if (!fs::exists(path)) not_built(dir, std::string(name) + " is missing");
    const auto digest = sha256_file(path);
    const auto& outputs = (*manifest)["outputs"];
    if (!outputs.contains(name) || outputs[name].get<std::string>() != digest) {
      not_built(dir, std::string(name) + " does not match the build manifest");
    }
    ws.input_digests.push_back(std::string(name) + " " + digest);
  }

  read_cache(dir / kCorpusCache, [&](std::istream& in) {
    ws.data = io::load_corpus_cache(in, (dir / kCorpusCache).string());
  });
  std::vector<ExampleRecord*> corpus;
  std::vector<ExampleRecord*> tests;
  for (auto& r : ws.data.corpus) corpus.push_back(&r);
  for (auto& r : ws.data.tests) tests.push_back(&r);
  read_cache(dir / kCorpusPolys, [&](std::istream& in) {
    io::attach_polynomials(in, ws.data.vocab, corpus, (dir / kCorpusPolys).string());
  });
  read_cache(dir / kTestPolys, [&](std::istream& in) {
    io::attach_polynomials(in, ws.data.vocab, tests, (dir / kTestPolys).string());
  });
  read_cache(dir / kIndexCache, [&](std::istream& in) { ws.index = InvertedIndex::load(in); });
  if (ws.index.doc_count() != ws.data.corpus.size()) {
    not_built(dir, "index and corpus disagree on the number of records");
  }
  return ws;
}

Pool candidate_pool(const Workspace& ws, const ExampleRecord& test, const SelectionPlan& plan) {
  const auto& corpus = ws.data.corpus;
  if (corpus.size() < plan.k) {
    throw DomainError("corpus has " + std::to_string(corpus.size()) + " records, fewer than k = " +
                      std::to_string(plan.k));
  }
  // Records are stored in index order, so index position == corpus position.
  std::unordered_map<ExampleId, std::size_t> position;
  const auto ids = ws.index.doc_ids();
  position.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) position.emplace(ids[i], i);

  Pool pool;
  const auto want = std::max(plan.pool_size, plan.k);
  const auto ranked = bm25_topk(ws.index, test.source_bag, want, plan.bm25);
  for (const auto& d : ranked) pool.candidates.push_back(&corpus[position.at(d.id)]);
  if (plan.pool_size >= plan.k && pool.candidates.size() >= plan.pool_size) return pool;
  if (pool.candidates.size() < plan.k || plan.pool_size < plan.k) pool.fallback = true;
  if (pool.candidates.size() >= plan.k) return pool;

  std::unordered_set<ExampleId> taken;
  for (const auto* r : pool.candidates) taken.insert(r->id);
  std::vector<const ExampleRecord*> rest;
  for (const auto& r : corpus) {
    if (!taken.count(r.id)) rest.push_back(&r);
  }
  std::sort(rest.begin(), rest.end(), [](auto* a, auto* b) { return a->id < b->id; });
  for (std::size_t i = 0; pool.candidates.size() < plan.k; ++i) pool.candidates.push_back(rest[i]);
  return pool;
}

json selection_to_json(const SelectionResult& r, std::size_t pool_size) {
  json steps = json::array();
  for (const auto& s : r.steps) {
    steps.push_back({{"mode", to_string(s.mode)},
                     {"candidate", s.candidate ? json(*s.candidate) : json(nullptr)},
                     {"value", number_or_null(s.value)},
                     {"committed", s.committed},
                     {"restart", s.restart},
                     {"reset_other_score", s.reset_other_score}});
  }
  return {{"test_id", r.test_id},
          {"strategy", to_string(r.strategy)},
          {"selected", r.selected},
          {"pool_size", pool_size},
          {"pool_fallback", r.pool_fallback},
          {"jitter_applied", r.jitter_applied},
          {"steps", steps}};
}

SelectReport run_select(const Config& config, std::ostream* log) {
  Stopwatch total;
  Stopwatch load_clock;
  const Workspace ws = load_workspace(config);
  const double load_seconds = load_clock.seconds();

  std::unordered_map<ExampleId, const ExampleRecord*> by_id;
  for (const auto& r : ws.data.corpus) by_id.emplace(r.id, &r);

  const auto& tests = ws.data.tests;
  const auto& strategies = config.strategies;
  struct Output {
    std::string selection;
    std::string prompt;
    bool fallback = false;
  };
  std::vector<Output> outputs(tests.size() * strategies.size());

  Stopwatch select_clock;
  parallel_for(tests.size(), config.workers, [&](std::size_t ti) {
    const auto& test = tests[ti];
    std::optional<Pool> pool;
    for (std::size_t si = 0; si < strategies.size(); ++si) {
      SelectionPlan plan = config.plan;
      plan.strategy = strategies[si];
      SelectionResult result;
      std::size_t pool_size = 0;
      if (plan.strategy == Strategy::random) {
        result = select_random(test, ws.data.corpus, plan);
      } else {
        if (!pool) pool = candidate_pool(ws, test, plan);
        result = select_examples(test, pool->candidates, ws.data.corpus, ws.index, plan);
        result.pool_fallback = pool->fallback;
        pool_size = pool->candidates.size();
      }
      std::vector<io::ExamplePair> examples;
      for (auto id : result.selected) {
        const auto* r = by_id.at(id);
        examples.emplace_back(r->source, r->target);
      }
      auto& out = outputs[ti * strategies.size() + si];
      out.selection = selection_to_json(result, pool_size).dump();
      const json prompt = {{"test_id", test.id},
                           {"strategy", to_string(plan.strategy)},
                           {"prompt", io::render_prompt(config.prompt, examples, test.source,
                                                        plan.k)}};
      out.prompt = prompt.dump();
      out.fallback = result.pool_fallback;
    }
  });
  const double select_seconds = select_clock.seconds();

  SelectReport report;
  report.tests = tests.size();
  report.records = outputs.size();
  const fs::path dir = config.output_dir;
  fs::create_directories(dir);
  report.selections = dir / kSelections;
  report.prompts = dir / kPrompts;
  report.manifest = dir / kManifest;

  Stopwatch write_clock;
  io::write_atomically(report.selections, [&](std::ostream& out) {
    for (const auto& o : outputs) out << o.selection << '\n';
  });
  io::write_atomically(report.prompts, [&](std::ostream& out) {
    for (const auto& o : outputs) out << o.prompt << '\n';
  });
  for (const auto& o : outputs) report.fallbacks += o.fallback ? 1 : 0;

  json m;
  m["tool"] = "syncov";
  m["version"] = toolkit_version();
  m["command"] = "select";
  m["config"] = config.snapshot();
  json inputs = json::object();
  for (const auto& line : ws.input_digests) {
    const auto sp = line.find(' ');
    inputs[line.substr(0, sp)] = line.substr(sp + 1);
  }
  m["inputs"] = inputs;
  m["timings"] = {{"load_seconds", load_seconds},
                  {"select_seconds", select_seconds},
                  {"write_seconds", write_clock.seconds()},
                  {"total_seconds", total.seconds()}};
  m["counts"] = {{"tests", report.tests},
                 {"records", report.records},
                 {"pool_fallbacks", report.fallbacks}};
  m["outputs"] = {{kSelections, sha256_file(report.selections)},
                  {kPrompts, sha256_file(report.prompts)}};
  write_json(report.manifest, m);

  if (log) {
    *log << "selected for " << report.tests << " test inputs x " << strategies.size()
         << " strategies";
    if (report.fallbacks) *log << " (" << report.fallbacks << " pool fallbacks)";
    *log << "\nwrote " << report.selections.string() << ", " << report.prompts.string() << ", "
         << report.manifest.string() << '\n';
  }
  return report;
}

}  // namespace syncov::pipeline
