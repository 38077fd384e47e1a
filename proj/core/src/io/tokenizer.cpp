#include "syncov/io/tokenizer.hpp"

#include <algorithm>
#include <span>

#include "syncov/error.hpp"

namespace syncov::io {
namespace {

struct CodePoint {
  char32_t value;
  std::size_t begin;  // byte offset
  std::size_t end;
};

// Lenient UTF-8 decoding: an invalid byte decodes as itself.
std::vector<CodePoint> decode(std::string_view s) {
  std::vector<CodePoint> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    char32_t cp = b0;
    if (b0 >= 0xC0 && b0 < 0xE0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if (b0 >= 0xE0 && b0 < 0xF0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if (b0 >= 0xF0 && b0 < 0xF8) {
      len = 4;
      cp = b0 & 0x07;
    }
    bool valid = len == 1 || i + len <= s.size();
    for (std::size_t k = 1; valid && k < len; ++k) {
      const auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) {
        valid = false;
      } else {
        cp = (cp << 6) | (b & 0x3F);
      }
    }
    if (!valid) {
      len = 1;
      cp = b0;
    }
    out.push_back({cp, i, i + len});
    i += len;
  }
  return out;
}

void encode(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool is_space(char32_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f' || c == 0xA0;
}

bool is_punct(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
           (c >= 0x7B && c <= 0x7E);
  }
  switch (c) {
    case 0xA1: case 0xA7: case 0xAB: case 0xB6: case 0xB7: case 0xBB: case 0xBF:
      return true;
    default:
      break;
  }
  return (c >= 0x2010 && c <= 0x205E) || (c >= 0x3001 && c <= 0x3003) ||
         (c >= 0x3008 && c <= 0x3011);
}

char32_t lower(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 0x20;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  return c;
}

class ChunkSplitter {
 public:
  ChunkSplitter(std::string_view text, const TokenizerOptions& options, std::vector<std::string>& out)
      : text_(text), options_(options), out_(out) {}

  void split(std::span<const CodePoint> cps) {
    std::size_t lo = 0;
    std::size_t hi = cps.size();
    while (lo < hi && is_punct(cps[lo].value)) {
      std::size_t run = lo + 1;
      if (cps[lo].value == '.') {
        while (run < hi && cps[run].value == '.') ++run;
      }
      emit(cps.subspan(lo, run - lo), true);
      lo = run;
    }
    std::vector<std::span<const CodePoint>> tail;
    while (hi > lo && is_punct(cps[hi - 1].value)) {
      std::size_t run = hi - 1;
      if (cps[run].value == '.') {
        while (run > lo && cps[run - 1].value == '.') --run;
      }
      tail.push_back(cps.subspan(run, hi - run));
      hi = run;
    }
    if (hi > lo) emit(cps.subspan(lo, hi - lo), false);
    for (auto it = tail.rbegin(); it != tail.rend(); ++it) emit(*it, true);
  }

 private:
  void emit(std::span<const CodePoint> cps, bool punctuation) {
    if (punctuation && !options_.keep_punctuation) return;
    std::string token;
    if (options_.lowercase) {
      for (const auto& cp : cps) encode(lower(cp.value), token);
    } else {
      token.assign(text_.substr(cps.front().begin, cps.back().end - cps.front().begin));
    }
    out_.push_back(std::move(token));
  }

  std::string_view text_;
  const TokenizerOptions& options_;
  std::vector<std::string>& out_;
};

}  // namespace

Tokenized tokenize(std::string_view text, std::string_view /*language*/,
                   const TokenizerOptions& options) {
  const auto cps = decode(text);
  Tokenized result;
  ChunkSplitter splitter(text, options, result.tokens);
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && is_space(cps[i].value)) ++i;
    std::size_t j = i;
    while (j < cps.size() && !is_space(cps[j].value)) ++j;
    if (j > i) splitter.split(std::span<const CodePoint>(cps).subspan(i, j - i));
    i = j;
  }
  if (result.tokens.empty()) {
    throw IngestError("text yields no tokens");
  }
  result.bag = TokenBag(result.tokens);
  return result;
}

}  // namespace syncov::io
