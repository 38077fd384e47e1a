#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "syncov/labels.hpp"
#include "syncov/tree.hpp"

namespace syncov::io {

struct ParsedSentence {
  std::size_t index = 0;        // 0-based block number in the file
  std::string sent_id;          // from "# sent_id = ..." when present
  std::size_t first_line = 0;   // 1-based line of the first token
  std::vector<std::string> forms;
  DependencyTree tree;
};

enum class LabelPolicy {
  intern,        // add unseen DEPREL values to the vocabulary
  require_known  // unseen DEPREL values are an IngestError
};

/// Reads CoNLL-U: one tree per sentence block, node id = token ID, label =
/// DEPREL, the token with HEAD 0 is the root. Multiword ranges ("3-4") and
/// empty nodes ("5.1") are skipped; columns past the tenth are ignored.
/// Errors name `source_name` and line numbers.
std::vector<ParsedSentence> read_conllu(std::istream& in, LabelVocabulary& vocab,
                                        std::string_view source_name = "<stream>",
                                        LabelPolicy policy = LabelPolicy::intern);

std::vector<ParsedSentence> load_conllu(const std::filesystem::path& path, LabelVocabulary& vocab,
                                        LabelPolicy policy = LabelPolicy::intern);

/// Writes a minimal CoNLL-U skeleton (ID, FORM, HEAD, DEPREL filled; other
/// columns "_") that read_conllu maps back to identical trees.
void write_conllu(std::ostream& out, const std::vector<ParsedSentence>& sentences,
                  const LabelVocabulary& vocab);

}  // namespace syncov::io
