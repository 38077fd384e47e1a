#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace syncov {

/// Multiset of token strings. Entries are kept sorted by token so iteration
/// order, equality and serialization are deterministic.
class TokenBag {
 public:
  using Entry = std::pair<std::string, std::uint32_t>;

  TokenBag() = default;
  explicit TokenBag(std::span<const std::string> tokens);

  void add(std::string_view token, std::uint32_t count = 1);

  /// Multiset sum.
  void merge(const TokenBag& other);

  std::uint32_t count(std::string_view token) const noexcept;
  std::uint64_t total() const noexcept { return total_; }
  std::size_t distinct() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return total_ == 0; }
  std::span<const Entry> entries() const noexcept { return entries_; }

  friend bool operator==(const TokenBag&, const TokenBag&) = default;

 private:
  std::vector<Entry> entries_;
  std::uint64_t total_ = 0;
};

/// Size of the multiset intersection: sum over tokens of the smaller count.
std::uint64_t intersection_size(const TokenBag& a, const TokenBag& b) noexcept;

}  // namespace syncov
