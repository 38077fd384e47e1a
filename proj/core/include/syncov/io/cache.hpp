#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <vector>

#include "syncov/example.hpp"
#include "syncov/labels.hpp"

namespace syncov::io {

/// Writes through a sibling temporary file and renames it into place, so a
/// failed write never leaves a partial file at `path`.
void write_atomically(const std::filesystem::path& path,
                      const std::function<void(std::ostream&)>& writer);

struct CorpusCache {
  LabelVocabulary vocab;
  std::vector<ExampleRecord> corpus;
  std::vector<ExampleRecord> tests;
};

/// Records with text, tokens and trees; bags are rebuilt from tokens on load,
/// polynomials are not stored here.
void save_corpus_cache(std::ostream& out, const CorpusCache& cache);
CorpusCache load_corpus_cache(std::istream& in, const std::string& name = "<corpus cache>");

/// Polynomials keyed by record id. The label list is stored alongside and
/// must match the vocabulary passed to attach_polynomials.
void save_polynomial_cache(std::ostream& out, const LabelVocabulary& vocab,
                           const std::vector<const ExampleRecord*>& records);

/// Fills `polynomial` on every record in `records` from the cache. Throws
/// CacheError if the vocabulary differs or a record id is missing.
void attach_polynomials(std::istream& in, const LabelVocabulary& vocab,
                        const std::vector<ExampleRecord*>& records,
                        const std::string& name = "<polynomial cache>");

}  // namespace syncov::io
