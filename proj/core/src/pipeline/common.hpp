#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "syncov/error.hpp"
#include "syncov/io/cache.hpp"

namespace syncov::pipeline {

inline constexpr const char* kCorpusCache = "corpus.bin";
inline constexpr const char* kCorpusPolys = "corpus.poly";
inline constexpr const char* kTestPolys = "tests.poly";
inline constexpr const char* kIndexCache = "index.bin";
inline constexpr const char* kManifest = "manifest.json";

using json = nlohmann::ordered_json;

inline std::optional<json> read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    return json::parse(in);
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

inline void write_json(const std::filesystem::path& path, const json& j) {
  io::write_atomically(path, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace syncov::pipeline
