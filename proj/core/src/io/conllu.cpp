#include "syncov/io/conllu.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "syncov/error.hpp"

namespace syncov::io {
namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      return cols;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool parse_int(std::string_view s, int& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

struct Token {
  int id;
  int head;
  std::string form;
  std::string deprel;
  std::size_t line;
};

class BlockReader {
 public:
  BlockReader(LabelVocabulary& vocab, std::string_view name, LabelPolicy policy)
      : vocab_(vocab), name_(name), policy_(policy) {}

  void comment(std::string_view line) {
    line.remove_prefix(1);
    line = trim(line);
    constexpr std::string_view key = "sent_id";
    if (line.starts_with(key)) {
      auto rest = trim(line.substr(key.size()));
      if (!rest.empty() && rest.front() == '=') sent_id_ = std::string(trim(rest.substr(1)));
    }
  }

  void token(std::string_view line, std::size_t line_no) {
    const auto cols = split_tabs(line);
    if (cols.size() < 8) {
      fail(line_no, "expected at least 8 tab-separated columns, found " +
                        std::to_string(cols.size()));
    }
    const auto id_col = cols[0];
    if (id_col.find('-') != std::string_view::npos || id_col.find('.') != std::string_view::npos) {
      return;  // multiword range or empty node
    }
    Token t{0, 0, std::string(cols[1]), std::string(trim(cols[7])), line_no};
    if (!parse_int(id_col, t.id) || t.id <= 0) {
      fail(line_no, "bad token ID '" + std::string(id_col) + "'");
    }
    if (!parse_int(trim(cols[6]), t.head) || t.head < 0) {
      fail(line_no, "bad HEAD '" + std::string(cols[6]) + "'");
    }
    if (t.deprel.empty() || t.deprel == "_") {
      fail(line_no, "missing DEPREL");
    }
    tokens_.push_back(std::move(t));
  }

  bool pending() const { return !tokens_.empty() || !sent_id_.empty(); }

  void finish(std::vector<ParsedSentence>& out) {
    if (tokens_.empty()) {
      sent_id_.clear();
      return;
    }
    std::vector<std::size_t> roots;
    for (const auto& t : tokens_) {
      if (t.head == 0) roots.push_back(t.line);
    }
    if (roots.size() != 1) {
      std::string where;
      for (auto l : roots) where += (where.empty() ? "" : ", ") + std::to_string(l);
      std::string msg = "sentence block " + std::to_string(out.size() + 1) + " (line " +
                        std::to_string(tokens_.front().line) + ") has " +
                        std::to_string(roots.size()) + " tokens with HEAD 0";
      if (!where.empty()) msg += " at lines " + where;
      throw StructureError(std::string(name_) + ": " + msg);
    }

    std::vector<DependencyTree::Node> nodes;
    std::vector<std::string> forms;
    nodes.reserve(tokens_.size());
    forms.reserve(tokens_.size());
    for (auto& t : tokens_) {
      LabelId label = 0;
      if (policy_ == LabelPolicy::intern) {
        label = vocab_.intern(t.deprel);
      } else {
        auto found = vocab_.find(t.deprel);
        if (!found) fail(t.line, "unknown dependency label '" + t.deprel + "'");
        label = *found;
      }
      nodes.push_back({t.id, label, t.head == 0 ? DependencyTree::kRoot : t.head});
      forms.push_back(std::move(t.form));
    }

    const std::size_t first_line = tokens_.front().line;
    try {
      out.push_back(ParsedSentence{out.size(), std::move(sent_id_), first_line, std::move(forms),
                                   DependencyTree(std::move(nodes))});
    } catch (const StructureError& e) {
      throw StructureError(std::string(name_) + ": sentence block " +
                           std::to_string(out.size() + 1) + " (line " +
                           std::to_string(first_line) + "): " + e.what());
    }
    tokens_.clear();
    sent_id_.clear();
  }

 private:
  [[noreturn]] void fail(std::size_t line_no, const std::string& what) const {
    throw IngestError(std::string(name_) + ":" + std::to_string(line_no) + ": " + what);
  }

  LabelVocabulary& vocab_;
  std::string_view name_;
  LabelPolicy policy_;
  std::vector<Token> tokens_;
  std::string sent_id_;
};

}  // namespace

std::vector<ParsedSentence> read_conllu(std::istream& in, LabelVocabulary& vocab,
                                        std::string_view source_name, LabelPolicy policy) {
  std::vector<ParsedSentence> out;
  BlockReader block(vocab, source_name, policy);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (trim(view).empty()) {
      block.finish(out);
    } else if (view.front() == '#') {
      block.comment(view);
    } else {
      block.token(view, line_no);
    }
  }
  block.finish(out);
  return out;
}

std::vector<ParsedSentence> load_conllu(const std::filesystem::path& path, LabelVocabulary& vocab,
                                        LabelPolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IngestError("cannot open CoNLL-U file " + path.string());
  }
  return read_conllu(in, vocab, path.string(), policy);
}

void write_conllu(std::ostream& out, const std::vector<ParsedSentence>& sentences,
                  const LabelVocabulary& vocab) {
  for (const auto& s : sentences) {
    if (!s.sent_id.empty()) out << "# sent_id = " << s.sent_id << '\n';
    const auto& nodes = s.tree.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      const std::string& form = i < s.forms.size() && !s.forms[i].empty() ? s.forms[i] : "_";
      out << n.id << '\t' << form << "\t_\t_\t_\t_\t"
          << (n.parent == DependencyTree::kRoot ? 0 : n.parent) << '\t' << vocab.name(n.label)
          << "\t_\t_\n";
    }
    out << '\n';
  }
}

}  // namespace syncov::io
