#include "syncov/io/prompt.hpp"

#include "syncov/error.hpp"

namespace syncov::io {

std::string_view to_string(PromptStyle style) {
  return style == PromptStyle::delimiter ? "delimiter" : "instruction";
}

PromptStyle parse_prompt_style(std::string_view name) {
  if (name == "delimiter") return PromptStyle::delimiter;
  if (name == "instruction") return PromptStyle::instruction;
  throw ConfigError("unknown prompt style '" + std::string(name) +
                    "' (expected delimiter or instruction)");
}

std::string render_prompt(const PromptTemplate& tmpl, const std::vector<ExamplePair>& examples,
                          std::string_view test_source, std::size_t k) {
  if (examples.size() != k) {
    throw DomainError("prompt expects " + std::to_string(k) + " examples, got " +
                      std::to_string(examples.size()));
  }
  const std::string& s = tmpl.source_language;
  const std::string& t = tmpl.target_language;
  std::string out;
  if (tmpl.style == PromptStyle::delimiter) {
    for (const auto& [x, y] : examples) {
      out.append(s).append(" sentence: ").append(x).append("\n");
      out.append(t).append(" sentence: ").append(y).append("\n###\n");
    }
    out.append(s).append(" sentence: ").append(test_source).append("\n");
    out.append(t).append(" sentence:");
  } else {
    out.append("Instruction: Translate the following\n");
    out.append(s).append(" text into ").append(t).append(".\n\n");
    for (const auto& [x, y] : examples) {
      out.append(s).append(": ").append(x).append("\n");
      out.append(t).append(": ").append(y).append("\n");
    }
    out.append(s).append(": ").append(test_source).append("\n");
    out.append(t).append(":");
  }
  return out;
}

}  // namespace syncov::io
