#include "syncov/io/cache.hpp"

#include <fstream>
#include <unordered_map>

#include "syncov/error.hpp"
#include "syncov/io/binary.hpp"

namespace syncov::io {
namespace {

constexpr std::string_view kCorpusMagic = "SYNCCORP";
constexpr std::string_view kPolyMagic = "SYNCPOLY";
constexpr std::uint32_t kVersion = 1;

void write_vocab(BinaryWriter& w, const LabelVocabulary& vocab) {
  w.u64(vocab.size());
  for (const auto& l : vocab.labels()) w.str(l);
}

LabelVocabulary read_vocab(BinaryReader& r) {
  const auto n = r.count();
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) labels.push_back(r.str());
  try {
    return LabelVocabulary(std::move(labels));
  } catch (const DataError& e) {
    throw CacheError(std::string("bad label vocabulary in cache: ") + e.what());
  }
}

void write_records(BinaryWriter& w, const std::vector<ExampleRecord>& records) {
  w.u64(records.size());
  for (const auto& r : records) {
    w.i64(r.id);
    w.str(r.source);
    w.str(r.target);
    w.u64(r.source_tokens.size());
    for (const auto& t : r.source_tokens) w.str(t);
    if (!r.tree) {
      w.u64(0);
      continue;
    }
    w.u64(r.tree->size());
    for (const auto& n : r.tree->nodes()) {
      w.i64(n.id);
      w.u32(n.label);
      w.i64(n.parent);
    }
  }
}

std::vector<ExampleRecord> read_records(BinaryReader& r, const LabelVocabulary& vocab) {
  const auto n = r.count();
  std::vector<ExampleRecord> records;
  records.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    ExampleRecord rec;
    rec.id = r.i64();
    rec.source = r.str();
    rec.target = r.str();
    const auto ntok = r.count();
    rec.source_tokens.reserve(ntok);
    for (std::uint64_t k = 0; k < ntok; ++k) rec.source_tokens.push_back(r.str());
    rec.source_bag = TokenBag(rec.source_tokens);
    const auto nnodes = r.count();
    if (nnodes > 0) {
      std::vector<DependencyTree::Node> nodes(nnodes);
      for (auto& node : nodes) {
        node.id = static_cast<int>(r.i64());
        node.label = r.u32();
        node.parent = static_cast<int>(r.i64());
      }
      try {
        rec.tree.emplace(std::move(nodes));
        rec.tree->check_labels(vocab);
      } catch (const DataError& e) {
        throw CacheError("corrupt tree for record " + std::to_string(rec.id) + ": " + e.what());
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace

void write_atomically(const std::filesystem::path& path,
                      const std::function<void(std::ostream&)>& writer) {
  auto tmp = path;
  tmp += ".tmp";
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw CacheError("cannot write " + tmp.string());
      writer(out);
      out.flush();
      if (!out) throw CacheError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
}

void save_corpus_cache(std::ostream& out, const CorpusCache& cache) {
  BinaryWriter w(out);
  w.header(kCorpusMagic, kVersion);
  write_vocab(w, cache.vocab);
  write_records(w, cache.corpus);
  write_records(w, cache.tests);
}

CorpusCache load_corpus_cache(std::istream& in, const std::string& name) {
  BinaryReader r(in, name);
  r.expect_header(kCorpusMagic, kVersion);
  CorpusCache cache;
  cache.vocab = read_vocab(r);
  cache.corpus = read_records(r, cache.vocab);
  cache.tests = read_records(r, cache.vocab);
  return cache;
}

void save_polynomial_cache(std::ostream& out, const LabelVocabulary& vocab,
                           const std::vector<const ExampleRecord*>& records) {
  BinaryWriter w(out);
  w.header(kPolyMagic, kVersion);
  write_vocab(w, vocab);
  w.u64(records.size());
  for (const auto* rec : records) {
    if (!rec->polynomial) {
      throw DomainError("record " + std::to_string(rec->id) + " has no polynomial");
    }
    w.i64(rec->id);
    const auto terms = rec->polynomial->terms();
    w.u64(terms.size());
    for (const auto& t : terms) {
      w.u64(t.multiplicity);
      w.u64(t.vector.nnz());
      for (const auto& e : t.vector.entries()) {
        w.u32(e.label);
        w.u32(e.exponent);
      }
    }
  }
}

void attach_polynomials(std::istream& in, const LabelVocabulary& vocab,
                        const std::vector<ExampleRecord*>& records, const std::string& name) {
  BinaryReader r(in, name);
  r.expect_header(kPolyMagic, kVersion);
  if (read_vocab(r) != vocab) {
    throw CacheError(name + ": label vocabulary does not match the corpus cache");
  }
  std::unordered_map<ExampleId, Polynomial> loaded;
  const auto n = r.count();
  loaded.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const ExampleId id = r.i64();
    const auto nterms = r.count();
    std::vector<Term> terms;
    terms.reserve(nterms);
    for (std::uint64_t k = 0; k < nterms; ++k) {
      const auto mult = r.u64();
      const auto nnz = r.count(vocab.size());
      std::vector<LabelPower> entries(nnz);
      for (auto& e : entries) {
        e.label = r.u32();
        e.exponent = r.u32();
        if (e.label >= vocab.size() || e.exponent == 0) {
          throw CacheError(name + ": corrupt term in record " + std::to_string(id));
        }
      }
      terms.push_back({TermVector(std::move(entries)), mult});
    }
    loaded.emplace(id, Polynomial(std::move(terms)));
  }
  for (auto* rec : records) {
    auto it = loaded.find(rec->id);
    if (it == loaded.end()) {
      throw CacheError(name + ": no polynomial for record " + std::to_string(rec->id));
    }
    rec->polynomial = std::move(it->second);
  }
}

}  // namespace syncov::io
