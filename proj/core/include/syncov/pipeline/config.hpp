#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "syncov/io/corpus.hpp"
#include "syncov/io/prompt.hpp"
#include "syncov/original_polynomial.hpp"
#include "syncov/selection.hpp"

namespace syncov::pipeline {

/// Run configuration. Text format: one "key = value" per line, blank lines
/// and lines starting with '#' ignored, unknown keys rejected. Relative
/// paths in a file resolve against the file's directory; relative paths
/// given as overrides resolve against the working directory.
struct Config {
  io::CorpusFiles corpus;
  io::CorpusFiles test;
  std::filesystem::path cache_dir = "cache";
  std::filesystem::path output_dir = "out";

  io::PromptTemplate prompt;
  io::TokenizerOptions tokenizer;
  std::size_t max_tokens = 120;
  bool filter_both_sides = false;

  std::vector<Strategy> strategies{Strategy::scoi};
  SelectionPlan plan;
  unsigned workers = 1;

  std::vector<int> bench_t{2, 4, 8, 16};
  std::vector<int> bench_q{1, 2, 3};
  std::uint64_t term_budget = kDefaultTermBudget;

  /// Every key with its effective value, for manifests.
  std::map<std::string, std::string> snapshot() const;
};

using Override = std::pair<std::string, std::string>;

/// Throws ConfigError with the offending line or key.
Config parse_config(std::string_view text, const std::filesystem::path& base_dir,
                    const std::vector<Override>& overrides = {});
Config load_config(const std::filesystem::path& path, const std::vector<Override>& overrides = {});

/// Defaults plus overrides, no file.
Config default_config(const std::vector<Override>& overrides = {});

/// The documented key list, "key  description" per line.
std::string config_reference();

}  // namespace syncov::pipeline
