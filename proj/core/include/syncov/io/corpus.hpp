#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "syncov/example.hpp"
#include "syncov/io/conllu.hpp"
#include "syncov/io/tokenizer.hpp"
#include "syncov/labels.hpp"

namespace syncov::io {

/// Lines of a UTF-8 text file without terminators ("\n" or "\r\n"). A final
/// line without a newline is kept; a trailing empty line is not.
std::vector<std::string> read_lines(const std::filesystem::path& path);

struct CorpusFiles {
  std::filesystem::path source;
  std::filesystem::path target;  // may be empty for test inputs
  std::filesystem::path conllu;
};

struct IngestOptions {
  TokenizerOptions tokenizer;
  std::string source_language;
  LabelPolicy labels = LabelPolicy::intern;
  ExampleId first_id = 0;  // record i gets id first_id + i
};

/// Line i of the source file, line i of the target file and sentence block i
/// of the CoNLL-U file become record i. Count mismatches, empty lines and
/// parse problems are IngestError/StructureError with file context.
std::vector<ExampleRecord> ingest(const CorpusFiles& files, LabelVocabulary& vocab,
                                  const IngestOptions& options = {});

struct FilterResult {
  std::vector<ExampleRecord> kept;
  std::size_t removed = 0;
};

/// Drops records with more than `max_tokens` source tokens (exactly
/// `max_tokens` is kept). With `both_sides`, the target's token count must
/// also stay within the limit.
FilterResult filter_by_length(std::vector<ExampleRecord> corpus, std::size_t max_tokens = 120,
                              bool both_sides = false, const TokenizerOptions& tokenizer = {});

}  // namespace syncov::io
