#include "syncov/io/corpus.hpp"

#include <fstream>

#include "syncov/error.hpp"

namespace syncov::io {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IngestError("cannot open " + path.string());
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<ExampleRecord> ingest(const CorpusFiles& files, LabelVocabulary& vocab,
                                  const IngestOptions& options) {
  const auto sources = read_lines(files.source);
  std::vector<std::string> targets;
  if (!files.target.empty()) {
    targets = read_lines(files.target);
    if (targets.size() != sources.size()) {
      throw IngestError("line count mismatch: " + files.source.string() + " has " +
                        std::to_string(sources.size()) + " lines, " + files.target.string() +
                        " has " + std::to_string(targets.size()));
    }
  }
  auto parsed = load_conllu(files.conllu, vocab, options.labels);
  if (parsed.size() != sources.size()) {
    throw IngestError("sentence count mismatch: " + files.source.string() + " has " +
                      std::to_string(sources.size()) + " lines, " + files.conllu.string() +
                      " has " + std::to_string(parsed.size()) + " sentence blocks");
  }

  std::vector<ExampleRecord> records;
  records.reserve(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    ExampleRecord r;
    r.id = options.first_id + static_cast<ExampleId>(i);
    r.source = sources[i];
    if (!targets.empty()) r.target = targets[i];
    try {
      auto tok = tokenize(r.source, options.source_language, options.tokenizer);
      r.source_tokens = std::move(tok.tokens);
      r.source_bag = std::move(tok.bag);
    } catch (const IngestError& e) {
      throw IngestError(files.source.string() + ":" + std::to_string(i + 1) + ": " + e.what());
    }
    r.tree = std::move(parsed[i].tree);
    records.push_back(std::move(r));
  }
  return records;
}

FilterResult filter_by_length(std::vector<ExampleRecord> corpus, std::size_t max_tokens,
                              bool both_sides, const TokenizerOptions& tokenizer) {
  FilterResult result;
  result.kept.reserve(corpus.size());
  for (auto& r : corpus) {
    bool keep = r.source_tokens.size() <= max_tokens;
    if (keep && both_sides && !r.target.empty()) {
      try {
        keep = tokenize(r.target, {}, tokenizer).tokens.size() <= max_tokens;
      } catch (const IngestError&) {
        // whitespace-only target: zero tokens
      }
    }
    if (keep) {
      result.kept.push_back(std::move(r));
    } else {
      ++result.removed;
    }
  }
  return result;
}

}  // namespace syncov::io
