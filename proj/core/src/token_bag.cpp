#include "syncov/token_bag.hpp"

#include <algorithm>
#include <iterator>

namespace syncov {
namespace {

auto token_less = [](const TokenBag::Entry& e, std::string_view t) { return e.first < t; };

}  // namespace

TokenBag::TokenBag(std::span<const std::string> tokens) {
  std::vector<std::string_view> sorted(tokens.begin(), tokens.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::string_view t : sorted) {
    if (!entries_.empty() && entries_.back().first == t) {
      ++entries_.back().second;
    } else {
      entries_.emplace_back(std::string(t), 1);
    }
  }
  total_ = tokens.size();
}

void TokenBag::add(std::string_view token, std::uint32_t count) {
  if (count == 0) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), token, token_less);
  if (it != entries_.end() && it->first == token) {
    it->second += count;
  } else {
    entries_.emplace(it, std::string(token), count);
  }
  total_ += count;
}

void TokenBag::merge(const TokenBag& other) {
  std::vector<Entry> out;
  out.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->first == b->first) {
      out.emplace_back(std::move(a->first), a->second + b->second);
      ++a;
      ++b;
    } else if (a->first < b->first) {
      out.push_back(std::move(*a++));
    } else {
      out.push_back(*b++);
    }
  }
  std::move(a, entries_.end(), std::back_inserter(out));
  std::copy(b, other.entries_.end(), std::back_inserter(out));
  entries_ = std::move(out);
  total_ += other.total_;
}

std::uint32_t TokenBag::count(std::string_view token) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), token, token_less);
  return (it != entries_.end() && it->first == token) ? it->second : 0;
}

std::uint64_t intersection_size(const TokenBag& a, const TokenBag& b) noexcept {
  auto x = a.entries();
  auto y = b.entries();
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint64_t n = 0;
  while (i < x.size() && j < y.size()) {
    const int c = x[i].first.compare(y[j].first);
    if (c == 0) {
      n += std::min(x[i].second, y[j].second);
      ++i;
      ++j;
    } else if (c < 0) {
      ++i;
    } else {
      ++j;
    }
  }
  return n;
}

}  // namespace syncov
