#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace syncov::io {

enum class PromptStyle { delimiter, instruction };

std::string_view to_string(PromptStyle style);
/// Accepts "delimiter" and "instruction"; throws ConfigError otherwise.
PromptStyle parse_prompt_style(std::string_view name);

struct PromptTemplate {
  PromptStyle style = PromptStyle::delimiter;
  std::string source_language = "German";
  std::string target_language = "English";
};

using ExamplePair = std::pair<std::string, std::string>;  // (source, target)

/// delimiter:
///   "<S> sentence: X_i\n<T> sentence: Y_i\n###\n" per example, then
///   "<S> sentence: X\n<T> sentence:"
/// instruction:
///   "Instruction: Translate the following\n<S> text into <T>.\n\n", then
///   "<S>: X_i\n<T>: Y_i\n" per example, then "<S>: X\n<T>:"
/// No trailing newline after the open target line. Throws DomainError when
/// examples.size() != k.
std::string render_prompt(const PromptTemplate& tmpl, const std::vector<ExamplePair>& examples,
                          std::string_view test_source, std::size_t k);

}  // namespace syncov::io
