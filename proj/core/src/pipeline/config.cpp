#include "syncov/pipeline/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "syncov/error.hpp"

namespace syncov::pipeline {
namespace {

namespace fs = std::filesystem;

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("config key '" + std::string(key) + "': bad number '" + std::string(v) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config key '" + std::string(key) + "': expected true or false, got '" +
                    std::string(v) + "'");
}

std::vector<int> parse_int_list(std::string_view key, std::string_view v) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    auto comma = v.find(',', start);
    if (comma == std::string_view::npos) comma = v.size();
    out.push_back(parse_number<int>(key, trim(v.substr(start, comma - start))));
    start = comma + 1;
  }
  return out;
}

template <typename T>
std::string join(const std::vector<T>& xs) {
  std::string s;
  for (const auto& x : xs) {
    if (!s.empty()) s += ',';
    if constexpr (std::is_same_v<T, Strategy>) {
      s += to_string(x);
    } else {
      s += std::to_string(x);
    }
  }
  return s;
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct Key {
  std::string_view name;
  std::string_view help;
  std::function<void(Config&, std::string_view value, const fs::path& base)> set;
  std::function<std::string(const Config&)> get;
};

fs::path resolve(const fs::path& base, std::string_view v) {
  fs::path p{std::string(v)};
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return (base / p).lexically_normal();
}

#define SYNCOV_PATH_KEY(NAME, MEMBER, HELP)                                          \
  Key {                                                                              \
    NAME, HELP,                                                                      \
        [](Config& c, std::string_view v, const fs::path& b) { c.MEMBER = resolve(b, v); }, \
        [](const Config& c) { return c.MEMBER.generic_string(); }                    \
  }

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      SYNCOV_PATH_KEY("corpus.source", corpus.source, "example database, source side, one sentence per line"),
      SYNCOV_PATH_KEY("corpus.target", corpus.target, "example database, target side, aligned with corpus.source"),
      SYNCOV_PATH_KEY("corpus.conllu", corpus.conllu, "CoNLL-U parses of corpus.source, one block per line"),
      SYNCOV_PATH_KEY("test.source", test.source, "test inputs, one sentence per line"),
      SYNCOV_PATH_KEY("test.target", test.target, "optional references for the test inputs"),
      SYNCOV_PATH_KEY("test.conllu", test.conllu, "CoNLL-U parses of test.source"),
      SYNCOV_PATH_KEY("cache_dir", cache_dir, "where build writes caches and its manifest"),
      SYNCOV_PATH_KEY("output_dir", output_dir, "where select writes selections, prompts and manifest"),
      {"source_language", "language name used in prompts (default German)",
       [](Config& c, std::string_view v, const fs::path&) { c.prompt.source_language = v; },
       [](const Config& c) { return c.prompt.source_language; }},
      {"target_language", "language name used in prompts (default English)",
       [](Config& c, std::string_view v, const fs::path&) { c.prompt.target_language = v; },
       [](const Config& c) { return c.prompt.target_language; }},
      {"prompt_style", "delimiter | instruction",
       [](Config& c, std::string_view v, const fs::path&) { c.prompt.style = io::parse_prompt_style(v); },
       [](const Config& c) { return std::string(io::to_string(c.prompt.style)); }},
      {"lowercase", "lowercase tokens before indexing and coverage (default false)",
       [](Config& c, std::string_view v, const fs::path&) { c.tokenizer.lowercase = parse_bool("lowercase", v); },
       [](const Config& c) { return std::string(c.tokenizer.lowercase ? "true" : "false"); }},
      {"keep_punctuation", "keep punctuation tokens (default true)",
       [](Config& c, std::string_view v, const fs::path&) {
         c.tokenizer.keep_punctuation = parse_bool("keep_punctuation", v);
       },
       [](const Config& c) { return std::string(c.tokenizer.keep_punctuation ? "true" : "false"); }},
      {"max_tokens", "drop corpus records with more source tokens than this (default 120)",
       [](Config& c, std::string_view v, const fs::path&) { c.max_tokens = parse_number<std::size_t>("max_tokens", v); },
       [](const Config& c) { return std::to_string(c.max_tokens); }},
      {"filter_both_sides", "apply max_tokens to the target side too (default false)",
       [](Config& c, std::string_view v, const fs::path&) {
         c.filter_both_sides = parse_bool("filter_both_sides", v);
       },
       [](const Config& c) { return std::string(c.filter_both_sides ? "true" : "false"); }},
      {"strategy", "scoi | syntax-only | word-only | topk-poly | dpp | bm25-passthrough | random | all; comma list allowed",
       [](Config& c, std::string_view v, const fs::path&) {
         c.strategies.clear();
         std::size_t start = 0;
         while (start <= v.size()) {
           auto comma = v.find(',', start);
           if (comma == std::string_view::npos) comma = v.size();
           const auto name = trim(v.substr(start, comma - start));
           if (name == "all") {
             c.strategies.assign(std::begin(kAllStrategies), std::end(kAllStrategies));
           } else if (auto s = parse_strategy(name)) {
             c.strategies.push_back(*s);
           } else {
             throw ConfigError("unknown strategy '" + std::string(name) + "'");
           }
           start = comma + 1;
         }
         c.plan.strategy = c.strategies.front();
       },
       [](const Config& c) { return join(c.strategies); }},
      {"k", "examples per prompt (default 4)",
       [](Config& c, std::string_view v, const fs::path&) { c.plan.k = parse_number<std::size_t>("k", v); },
       [](const Config& c) { return std::to_string(c.plan.k); }},
      {"order", "syntax-first | word-first",
       [](Config& c, std::string_view v, const fs::path&) {
         auto o = parse_order(v);
         if (!o) throw ConfigError("unknown order '" + std::string(v) + "'");
         c.plan.order = *o;
       },
       [](const Config& c) { return std::string(to_string(c.plan.order)); }},
      {"measure", "normalized-manhattan | cosine",
       [](Config& c, std::string_view v, const fs::path&) {
         auto m = parse_coverage_measure(v);
         if (!m) throw ConfigError("unknown coverage measure '" + std::string(v) + "'");
         c.plan.measure = *m;
       },
       [](const Config& c) { return std::string(to_string(c.plan.measure)); }},
      {"pool_size", "BM25 candidates per test input (default 100)",
       [](Config& c, std::string_view v, const fs::path&) {
         c.plan.pool_size = parse_number<std::size_t>("pool_size", v);
       },
       [](const Config& c) { return std::to_string(c.plan.pool_size); }},
      {"lambda", "DPP relevance trade-off (default 0.5)",
       [](Config& c, std::string_view v, const fs::path&) { c.plan.lambda = parse_number<double>("lambda", v); },
       [](const Config& c) { return fmt_double(c.plan.lambda); }},
      {"relevance", "DPP relevance from distance: inverse-distance | min-max",
       [](Config& c, std::string_view v, const fs::path&) {
         auto r = parse_relevance(v);
         if (!r) throw ConfigError("unknown relevance normalization '" + std::string(v) + "'");
         c.plan.relevance = *r;
       },
       [](const Config& c) { return std::string(to_string(c.plan.relevance)); }},
      {"bm25.k1", "BM25 k1 (default 1.5)",
       [](Config& c, std::string_view v, const fs::path&) { c.plan.bm25.k1 = parse_number<double>("bm25.k1", v); },
       [](const Config& c) { return fmt_double(c.plan.bm25.k1); }},
      {"bm25.b", "BM25 b (default 0.75)",
       [](Config& c, std::string_view v, const fs::path&) { c.plan.bm25.b = parse_number<double>("bm25.b", v); },
       [](const Config& c) { return fmt_double(c.plan.bm25.b); }},
      {"bm25.raw_length", "DPP word matrix uses raw candidate length (default false)",
       [](Config& c, std::string_view v, const fs::path&) {
         c.plan.bm25.raw_length = parse_bool("bm25.raw_length", v);
       },
       [](const Config& c) { return std::string(c.plan.bm25.raw_length ? "true" : "false"); }},
      {"seed", "seed for the random strategy (default 0)",
       [](Config& c, std::string_view v, const fs::path&) { c.plan.seed = parse_number<std::uint64_t>("seed", v); },
       [](const Config& c) { return std::to_string(c.plan.seed); }},
      {"workers", "threads for polynomial building and selection (default 1)",
       [](Config& c, std::string_view v, const fs::path&) {
         c.workers = parse_number<unsigned>("workers", v);
         if (c.workers == 0) throw ConfigError("workers must be at least 1");
       },
       [](const Config& c) { return std::to_string(c.workers); }},
      {"bench.t", "chain lengths for bench (default 2,4,8,16)",
       [](Config& c, std::string_view v, const fs::path&) { c.bench_t = parse_int_list("bench.t", v); },
       [](const Config& c) { return join(c.bench_t); }},
      {"bench.q", "binary levels for bench (default 1,2,3)",
       [](Config& c, std::string_view v, const fs::path&) { c.bench_q = parse_int_list("bench.q", v); },
       [](const Config& c) { return join(c.bench_q); }},
      {"bench.term_budget", "term budget for the original expansion (default 1000000)",
       [](Config& c, std::string_view v, const fs::path&) {
         c.term_budget = parse_number<std::uint64_t>("bench.term_budget", v);
       },
       [](const Config& c) { return std::to_string(c.term_budget); }},
  };
  return table;
}

#undef SYNCOV_PATH_KEY

const Key& find_key(std::string_view name) {
  for (const auto& k : keys()) {
    if (k.name == name) return k;
  }
  throw ConfigError("unknown config key '" + std::string(name) + "'");
}

void finish(Config& c) {
  c.plan.validate();
  for (int t : c.bench_t) {
    if (t < 1) throw ConfigError("bench.t values must be >= 1");
  }
  for (int q : c.bench_q) {
    if (q < 0 || q > 20) throw ConfigError("bench.q values must be in [0, 20]");
  }
}

}  // namespace

std::map<std::string, std::string> Config::snapshot() const {
  std::map<std::string, std::string> out;
  for (const auto& k : keys()) out.emplace(k.name, k.get(*this));
  return out;
}

Config parse_config(std::string_view text, const fs::path& base_dir,
                    const std::vector<Override>& overrides) {
  Config c;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = trim(text.substr(start, nl - start));
    start = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    try {
      find_key(key).set(c, trim(line.substr(eq + 1)), base_dir);
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  for (const auto& [key, value] : overrides) {
    find_key(key).set(c, trim(value), fs::current_path());
  }
  finish(c);
  return c;
}

Config load_config(const fs::path& path, const std::vector<Override>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path(), overrides);
}

Config default_config(const std::vector<Override>& overrides) {
  return parse_config({}, {}, overrides);
}

std::string config_reference() {
  std::string out;
  for (const auto& k : keys()) {
    out.append(k.name);
    out.append(k.name.size() < 20 ? 20 - k.name.size() : 1, ' ');
    out.append(k.help).append("\n");
  }
  return out;
}

}  // namespace syncov::pipeline
