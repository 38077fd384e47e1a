#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "syncov/token_bag.hpp"

namespace syncov::io {

struct TokenizerOptions {
  bool lowercase = false;         // ASCII, Latin-1 and basic Cyrillic letters
  bool keep_punctuation = true;   // drop punctuation-only tokens when false
};

struct Tokenized {
  std::vector<std::string> tokens;
  TokenBag bag;
};

/// Frozen Moses-like rule set:
///  1. split on whitespace (ASCII whitespace and U+00A0);
///  2. peel punctuation code points off the front of each chunk, one token
///     per code point, then likewise off the back (a run of '.' stays one
///     token, so "..." survives);
///  3. whatever remains is one token; inner punctuation ("don't", "50.000")
///     is kept, so "U.S." splits into "U.S" and ".".
/// Case is preserved unless options.lowercase. The language tag is accepted
/// for interface stability; no rule currently depends on it.
/// Throws IngestError on empty or whitespace-only text.
Tokenized tokenize(std::string_view text, std::string_view language = {},
                   const TokenizerOptions& options = {});

}  // namespace syncov::io
