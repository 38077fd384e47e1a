#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "syncov/polynomial.hpp"
#include "syncov/token_bag.hpp"
#include "syncov/tree.hpp"

namespace syncov {

using ExampleId = std::int64_t;

/// One parallel-corpus entry (or one test input). Only the source side is
/// ever scored; the target is carried through to prompt rendering.
struct ExampleRecord {
  ExampleId id = 0;
  std::string source;
  std::string target;
  std::vector<std::string> source_tokens;
  TokenBag source_bag;
  std::optional<DependencyTree> tree;
  std::optional<Polynomial> polynomial;
};

}  // namespace syncov
