#include "syncov/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "syncov/error.hpp"
#include "syncov/io/binary.hpp"

namespace syncov {

namespace {
constexpr std::string_view kIndexMagic = "SYNCVIDX";
constexpr std::uint32_t kIndexVersion = 1;
}  // namespace

void Bm25Params::validate() const {
  if (!(k1 > 0.0)) throw ConfigError("bm25 k1 must be positive");
  if (!(b >= 0.0 && b <= 1.0)) throw ConfigError("bm25 b must lie in [0, 1]");
}

double bm25_idf(std::uint64_t doc_count, std::uint64_t doc_freq) noexcept {
  const double n = static_cast<double>(doc_count);
  const double df = static_cast<double>(doc_freq);
  return std::log((n - df + 0.5) / (df + 0.5) + 1.0);
}

double bm25_tf(double tf, double length_ratio, const Bm25Params& params) noexcept {
  if (tf <= 0.0) return 0.0;
  return tf * (params.k1 + 1.0) /
         (tf + params.k1 * (1.0 - params.b + params.b * length_ratio));
}

InvertedIndex InvertedIndex::build(std::span<const ExampleRecord> corpus) {
  if (corpus.empty()) throw DataError("cannot build an index over an empty corpus");

  InvertedIndex index;
  std::map<std::string_view, std::vector<Posting>> postings;
  std::unordered_set<ExampleId> seen;
  std::uint64_t total_length = 0;

  for (std::size_t pos = 0; pos < corpus.size(); ++pos) {
    const auto& record = corpus[pos];
    if (!seen.insert(record.id).second) {
      throw DataError("duplicate example id " + std::to_string(record.id));
    }
    if (record.source_bag.empty()) {
      throw DataError("example " + std::to_string(record.id) + " has no tokens");
    }
    index.doc_ids_.push_back(record.id);
    index.doc_lengths_.push_back(static_cast<std::uint32_t>(record.source_bag.total()));
    total_length += record.source_bag.total();
    for (const auto& [token, tf] : record.source_bag.entries()) {
      postings[token].push_back({static_cast<std::uint32_t>(pos), tf});
    }
  }

  index.vocabulary_.reserve(postings.size());
  index.postings_.reserve(postings.size());
  for (auto& [token, list] : postings) {
    index.vocabulary_.emplace_back(token);
    index.postings_.push_back(std::move(list));
  }
  index.avg_length_ = static_cast<double>(total_length) / static_cast<double>(corpus.size());
  return index;
}

std::span<const InvertedIndex::Posting> InvertedIndex::postings(std::string_view token) const noexcept {
  auto it = std::lower_bound(vocabulary_.begin(), vocabulary_.end(), token);
  if (it == vocabulary_.end() || *it != token) return {};
  return postings_[static_cast<std::size_t>(it - vocabulary_.begin())];
}

std::uint64_t InvertedIndex::doc_freq(std::string_view token) const noexcept {
  return postings(token).size();
}

std::uint32_t InvertedIndex::length_of(ExampleId id) const {
  auto it = std::find(doc_ids_.begin(), doc_ids_.end(), id);
  if (it == doc_ids_.end()) throw DataError("example " + std::to_string(id) + " not in index");
  return doc_lengths_[static_cast<std::size_t>(it - doc_ids_.begin())];
}

void InvertedIndex::save(std::ostream& out) const {
  io::BinaryWriter w(out);
  w.header(kIndexMagic, kIndexVersion);
  w.u64(doc_ids_.size());
  for (std::size_t i = 0; i < doc_ids_.size(); ++i) {
    w.i64(doc_ids_[i]);
    w.u32(doc_lengths_[i]);
  }
  w.f64(avg_length_);
  w.u64(vocabulary_.size());
  for (std::size_t t = 0; t < vocabulary_.size(); ++t) {
    w.str(vocabulary_[t]);
    w.u64(postings_[t].size());
    for (const auto& p : postings_[t]) {
      w.u32(p.doc);
      w.u32(p.tf);
    }
  }
}

InvertedIndex InvertedIndex::load(std::istream& in) {
  io::BinaryReader r(in, "index cache");
  r.expect_header(kIndexMagic, kIndexVersion);
  InvertedIndex index;
  const auto docs = r.count();
  index.doc_ids_.reserve(docs);
  index.doc_lengths_.reserve(docs);
  for (std::uint64_t i = 0; i < docs; ++i) {
    index.doc_ids_.push_back(r.i64());
    index.doc_lengths_.push_back(r.u32());
  }
  index.avg_length_ = r.f64();
  const auto terms = r.count();
  index.vocabulary_.reserve(terms);
  index.postings_.reserve(terms);
  for (std::uint64_t t = 0; t < terms; ++t) {
    index.vocabulary_.push_back(r.str());
    std::vector<Posting> list(r.count(docs));
    for (auto& p : list) {
      p.doc = r.u32();
      p.tf = r.u32();
      if (p.doc >= docs) throw CacheError("index cache: posting refers to unknown document");
    }
    index.postings_.push_back(std::move(list));
  }
  if (!std::is_sorted(index.vocabulary_.begin(), index.vocabulary_.end())) {
    throw CacheError("index cache: vocabulary is not sorted");
  }
  return index;
}

namespace {

// Dense accumulation over the query's distinct tokens in sorted order, so the
// floating-point sum is reproducible.
std::vector<ScoredDoc> score_all(const InvertedIndex& index, const TokenBag& query,
                                 const Bm25Params& params) {
  const auto n = index.doc_count();
  std::vector<double> acc(n, 0.0);
  std::vector<std::uint32_t> touched;
  const auto lengths = index.doc_lengths();
  const double avg = index.average_length();
  for (const auto& [token, qtf] : query.entries()) {
    const auto list = index.postings(token);
    if (list.empty()) continue;
    const double idf = bm25_idf(n, list.size());
    for (const auto& p : list) {
      if (acc[p.doc] == 0.0) touched.push_back(p.doc);
      acc[p.doc] += idf * bm25_tf(p.tf, lengths[p.doc] / avg, params);
    }
  }
  std::vector<ScoredDoc> out;
  out.reserve(touched.size());
  const auto ids = index.doc_ids();
  for (auto d : touched) out.push_back({ids[d], acc[d]});
  return out;
}

bool ranks_before(const ScoredDoc& a, const ScoredDoc& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.id < b.id;
}

}  // namespace

std::vector<ScoredDoc> bm25_topk(const InvertedIndex& index, const TokenBag& query,
                                 std::size_t k, const Bm25Params& params) {
  if (k == 0) throw DomainError("bm25_topk requires k >= 1");
  auto scored = score_all(index, query, params);
  const std::size_t keep = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                    scored.end(), ranks_before);
  scored.resize(keep);
  return scored;
}

double bm25_score(const InvertedIndex& index, const TokenBag& query, ExampleId doc,
                  const Bm25Params& params) {
  for (const auto& s : score_all(index, query, params)) {
    if (s.id == doc) return s.score;
  }
  return 0.0;
}

CandidateWordMatrix word_matrix(std::span<const ExampleRecord* const> candidates,
                                const TokenBag& query, const InvertedIndex& index,
                                const Bm25Params& params) {
  if (candidates.empty()) throw DomainError("word_matrix requires at least one candidate");
  CandidateWordMatrix m;
  for (const auto& [token, qtf] : query.entries()) m.terms.push_back(token);

  std::vector<double> idf(m.terms.size());
  for (std::size_t j = 0; j < m.terms.size(); ++j) {
    std::uint64_t df = 0;
    for (const auto* c : candidates) df += c->source_bag.count(m.terms[j]) > 0 ? 1 : 0;
    idf[j] = bm25_idf(candidates.size(), df);
  }

  const double avg = index.average_length();
  for (const auto* c : candidates) {
    const double length = static_cast<double>(c->source_bag.total());
    const double l = params.raw_length ? length : length / avg;
    std::vector<double> row(m.terms.size(), 0.0);
    for (std::size_t j = 0; j < m.terms.size(); ++j) {
      row[j] = idf[j] * bm25_tf(c->source_bag.count(m.terms[j]), l, params);
    }
    m.candidates.push_back(c->id);
    m.rows.push_back(std::move(row));
  }
  return m;
}

}  // namespace syncov
