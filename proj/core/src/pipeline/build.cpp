#include <ostream>

#include "common.hpp"
#include "parallel.hpp"
#include "syncov/io/corpus.hpp"
#include "syncov/pipeline/digest.hpp"
#include "syncov/pipeline/pipeline.hpp"
#include "syncov/polynomial.hpp"

namespace syncov::pipeline {
namespace {

namespace fs = std::filesystem;

struct InputFile {
  std::string key;
  fs::path path;
};

std::vector<InputFile> input_files(const Config& c) {
  auto require = [](const char* key, const fs::path& p) {
    if (p.empty()) throw ConfigError(std::string("config key '") + key + "' is required");
  };
  require("corpus.source", c.corpus.source);
  require("corpus.target", c.corpus.target);
  require("corpus.conllu", c.corpus.conllu);
  require("test.source", c.test.source);
  require("test.conllu", c.test.conllu);
  std::vector<InputFile> files{{"corpus.source", c.corpus.source},
                               {"corpus.target", c.corpus.target},
                               {"corpus.conllu", c.corpus.conllu},
                               {"test.source", c.test.source},
                               {"test.conllu", c.test.conllu}};
  if (!c.test.target.empty()) files.push_back({"test.target", c.test.target});
  return files;
}

/// Previous manifest's view of one stage: its key and output digests.
class PriorRun {
 public:
  PriorRun(const fs::path& dir) : dir_(dir), manifest_(read_json(dir / kManifest)) {}

  bool up_to_date(const std::string& stage, const std::string& key,
                  const std::vector<std::string>& outputs) const {
    if (!manifest_) return false;
    const auto& m = *manifest_;
    if (!m.contains("stages") || !m.contains("outputs")) return false;
    bool key_ok = false;
    for (const auto& s : m["stages"]) {
      if (s.value("name", "") == stage && s.value("key", "") == key) key_ok = true;
    }
    if (!key_ok) return false;
    for (const auto& name : outputs) {
      const auto p = dir_ / name;
      if (!m["outputs"].contains(name) || !fs::exists(p)) return false;
      if (m["outputs"][name].get<std::string>() != sha256_file(p)) return false;
    }
    return true;
  }

 private:
  fs::path dir_;
  std::optional<json> manifest_;
};

class Builder {
 public:
  Builder(const Config& config, std::ostream* log) : c_(config), log_(log), dir_(config.cache_dir) {}

  BuildReport run() {
    // Digest inputs first: a missing file fails here, before anything is written.
    const auto inputs = input_files(c_);
    for (const auto& f : inputs) {
      if (!fs::exists(f.path)) {
        throw IngestError(f.key + ": file not found: " + f.path.string());
      }
      input_digests_[f.key] = {f.path.generic_string(), sha256_file(f.path)};
    }
    const PriorRun prior(dir_);

    std::string corpus_key_src = "corpus-v1";
    for (const auto& f : inputs) corpus_key_src += "\n" + f.key + " " + input_digests_[f.key].second;
    for (const char* k : {"lowercase", "keep_punctuation", "max_tokens", "filter_both_sides"}) {
      corpus_key_src += std::string("\n") + k + "=" + c_.snapshot().at(k);
    }
    const auto corpus_key = sha256_hex(corpus_key_src);

    if (prior.up_to_date("vocabulary", corpus_key, {kCorpusCache})) {
      for (const char* s : {"ingest", "filter", "vocabulary"}) skip(s, corpus_key);
    } else {
      build_corpus(corpus_key);
    }
    outputs_[kCorpusCache] = sha256_file(dir_ / kCorpusCache);

    const auto poly_key = sha256_hex("polynomials-v1\n" + outputs_[kCorpusCache]);
    if (prior.up_to_date("polynomials", poly_key, {kCorpusPolys, kTestPolys})) {
      skip("polynomials", poly_key);
    } else {
      build_polynomials(poly_key);
    }
    outputs_[kCorpusPolys] = sha256_file(dir_ / kCorpusPolys);
    outputs_[kTestPolys] = sha256_file(dir_ / kTestPolys);

    const auto index_key = sha256_hex("index-v1\n" + outputs_[kCorpusCache]);
    if (prior.up_to_date("index", index_key, {kIndexCache})) {
      skip("index", index_key);
    } else {
      build_index(index_key);
    }
    outputs_[kIndexCache] = sha256_file(dir_ / kIndexCache);

    write_manifest();
    return report_;
  }

 private:
  void skip(const std::string& name, const std::string& key) {
    report_.stages.push_back({name, true, 0.0});
    keys_.push_back(key);
    say(name, true, 0.0);
  }

  void ran(const std::string& name, const std::string& key, double seconds) {
    report_.stages.push_back({name, false, seconds});
    keys_.push_back(key);
    say(name, false, seconds);
  }

  void say(const std::string& name, bool skipped, double seconds) {
    if (!log_) return;
    *log_ << "stage " << name << ": " << (skipped ? "skipped (up to date)" : "done");
    if (!skipped) *log_ << " in " << seconds << " s";
    *log_ << '\n';
  }

  const io::CorpusCache& data() {
    if (!data_) {
      std::ifstream in(dir_ / kCorpusCache, std::ios::binary);
      data_ = io::load_corpus_cache(in, (dir_ / kCorpusCache).string());
    }
    return *data_;
  }

  void build_corpus(const std::string& key) {
    io::CorpusCache cache;
    io::IngestOptions opts;
    opts.tokenizer = c_.tokenizer;
    opts.source_language = c_.prompt.source_language;

    Stopwatch sw;
    auto corpus = io::ingest(c_.corpus, cache.vocab, opts);
    cache.tests = io::ingest(c_.test, cache.vocab, opts);
    ran("ingest", key, sw.seconds());

    Stopwatch sf;
    auto filtered = io::filter_by_length(std::move(corpus), c_.max_tokens, c_.filter_both_sides,
                                         c_.tokenizer);
    if (filtered.kept.empty()) {
      throw IngestError("no corpus records left after the length filter");
    }
    cache.corpus = std::move(filtered.kept);
    report_.removed = filtered.removed;
    ran("filter", key, sf.seconds());

    // Labels were interned in first-seen order across corpus then tests, so
    // the vocabulary already covers every tree; this stage persists it.
    Stopwatch sv;
    fs::create_directories(dir_);
    io::write_atomically(dir_ / kCorpusCache,
                         [&](std::ostream& out) { io::save_corpus_cache(out, cache); });
    ran("vocabulary", key, sv.seconds());
    data_ = std::move(cache);
  }

  void build_polynomials(const std::string& key) {
    Stopwatch sw;
    auto cache = data();
    auto compute = [&](std::vector<ExampleRecord>& records) {
      parallel_for(records.size(), c_.workers, [&](std::size_t i) {
        records[i].polynomial = simplified_polynomial(*records[i].tree, cache.vocab);
      });
      std::vector<const ExampleRecord*> ptrs;
      for (const auto& r : records) ptrs.push_back(&r);
      return ptrs;
    };
    const auto corpus = compute(cache.corpus);
    const auto tests = compute(cache.tests);
    io::write_atomically(dir_ / kCorpusPolys, [&](std::ostream& out) {
      io::save_polynomial_cache(out, cache.vocab, corpus);
    });
    io::write_atomically(dir_ / kTestPolys, [&](std::ostream& out) {
      io::save_polynomial_cache(out, cache.vocab, tests);
    });
    ran("polynomials", key, sw.seconds());
  }

  void build_index(const std::string& key) {
    Stopwatch sw;
    const auto index = InvertedIndex::build(data().corpus);
    io::write_atomically(dir_ / kIndexCache, [&](std::ostream& out) { index.save(out); });
    ran("index", key, sw.seconds());
  }

  void write_manifest() {
    const auto& d = data();
    report_.corpus_records = d.corpus.size();
    report_.test_records = d.tests.size();
    report_.labels = d.vocab.size();

    json m;
    m["tool"] = "syncov";
    m["version"] = toolkit_version();
    m["command"] = "build";
    m["config"] = c_.snapshot();
    json inputs = json::object();
    for (const auto& [k, v] : input_digests_) inputs[k] = {{"path", v.first}, {"sha256", v.second}};
    m["inputs"] = inputs;
    json stages = json::array();
    for (std::size_t i = 0; i < report_.stages.size(); ++i) {
      const auto& s = report_.stages[i];
      stages.push_back({{"name", s.name},
                        {"key", keys_[i]},
                        {"status", s.skipped ? "skipped" : "ran"},
                        {"seconds", s.seconds}});
    }
    m["stages"] = stages;
    m["outputs"] = outputs_;
    m["counts"] = {{"corpus_records", report_.corpus_records},
                   {"test_records", report_.test_records},
                   {"labels", report_.labels}};
    if (!report_.stages[1].skipped) {
      m["counts"]["removed_by_filter"] = report_.removed;
    } else if (auto old = read_json(dir_ / kManifest);
               old && old->contains("counts") && (*old)["counts"].contains("removed_by_filter")) {
      report_.removed = (*old)["counts"]["removed_by_filter"].get<std::size_t>();
      m["counts"]["removed_by_filter"] = report_.removed;
    }
    write_json(dir_ / kManifest, m);
  }

  const Config& c_;
  std::ostream* log_;
  fs::path dir_;
  BuildReport report_;
  std::vector<std::string> keys_;
  std::map<std::string, std::pair<std::string, std::string>> input_digests_;
  std::map<std::string, std::string> outputs_;
  std::optional<io::CorpusCache> data_;
};

}  // namespace

std::string_view toolkit_version() noexcept { return SYNCOV_VERSION; }

BuildReport run_build(const Config& config, std::ostream* log) {
  return Builder(config, log).run();
}

}  // namespace syncov::pipeline
