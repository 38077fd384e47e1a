#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "syncov/example.hpp"
#include "syncov/token_bag.hpp"

namespace syncov {

struct Bm25Params {
  double k1 = 1.5;
  double b = 0.75;
  /// Use raw candidate length for l_i in the word matrix instead of length
  /// divided by the average document length.
  bool raw_length = false;

  void validate() const;
};

/// Okapi idf with the +1 smoothing that keeps it positive:
/// ln((N - df + 0.5) / (df + 0.5) + 1).
double bm25_idf(std::uint64_t doc_count, std::uint64_t doc_freq) noexcept;

/// Saturated, length-normalised term frequency:
/// tf (k1 + 1) / (tf + k1 (1 - b + b * length_ratio)).
double bm25_tf(double tf, double length_ratio, const Bm25Params& params) noexcept;

struct ScoredDoc {
  ExampleId id = 0;
  double score = 0.0;

  friend bool operator==(const ScoredDoc&, const ScoredDoc&) = default;
};

/// Immutable inverted index over tokenized documents.
class InvertedIndex {
 public:
  struct Posting {
    std::uint32_t doc = 0;  // position in doc_ids()
    std::uint32_t tf = 0;

    friend bool operator==(const Posting&, const Posting&) = default;
  };

  /// Throws DataError for an empty corpus, an empty document, or duplicate ids.
  static InvertedIndex build(std::span<const ExampleRecord> corpus);

  std::uint64_t doc_count() const noexcept { return doc_ids_.size(); }
  double average_length() const noexcept { return avg_length_; }
  std::span<const ExampleId> doc_ids() const noexcept { return doc_ids_; }
  std::span<const std::uint32_t> doc_lengths() const noexcept { return doc_lengths_; }

  /// Document frequency of `token`, 0 if unseen.
  std::uint64_t doc_freq(std::string_view token) const noexcept;
  std::span<const Posting> postings(std::string_view token) const noexcept;
  std::uint32_t length_of(ExampleId id) const;

  /// Versioned binary persistence. load() throws CacheError on a bad file.
  void save(std::ostream& out) const;
  static InvertedIndex load(std::istream& in);

  friend bool operator==(const InvertedIndex&, const InvertedIndex&) = default;

 private:
  std::vector<std::string> vocabulary_;  // sorted
  std::vector<std::vector<Posting>> postings_;
  std::vector<ExampleId> doc_ids_;
  std::vector<std::uint32_t> doc_lengths_;
  double avg_length_ = 0.0;
};

/// Top-k documents by BM25 score, summed over the query's distinct tokens.
/// Equal scores rank by ascending example id. Documents sharing no token with
/// the query are never returned, so the result may hold fewer than k entries.
std::vector<ScoredDoc> bm25_topk(const InvertedIndex& index, const TokenBag& query,
                                 std::size_t k = 100, const Bm25Params& params = {});

/// BM25 score of one document for `query`; 0 when nothing matches.
double bm25_score(const InvertedIndex& index, const TokenBag& query, ExampleId doc,
                  const Bm25Params& params = {});

/// Candidate-by-query-term weight matrix. Columns follow the query's distinct
/// tokens in sorted order.
struct CandidateWordMatrix {
  std::vector<std::string> terms;
  std::vector<ExampleId> candidates;
  std::vector<std::vector<double>> rows;
};

/// W[i][j] = idf_j * tf_ij (k1 + 1) / (tf_ij + k1 (1 - b + b l_i)).
/// idf_j is computed over the candidate set; l_i is the candidate's length
/// divided by the index's average length (or raw, see Bm25Params).
CandidateWordMatrix word_matrix(std::span<const ExampleRecord* const> candidates,
                                const TokenBag& query, const InvertedIndex& index,
                                const Bm25Params& params = {});

}  // namespace syncov
