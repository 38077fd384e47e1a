#include "syncov/term.hpp"

#include <algorithm>

namespace syncov {

TermVector::TermVector(std::vector<LabelPower> entries) {
  std::sort(entries.begin(), entries.end());
  for (const auto& e : entries) {
    if (e.exponent == 0) continue;
    if (!entries_.empty() && entries_.back().label == e.label) {
      entries_.back().exponent += e.exponent;
    } else {
      entries_.push_back(e);
    }
  }
}

TermVector TermVector::single(LabelId label, std::uint32_t exponent) {
  if (exponent == 0) return {};
  return TermVector(Sorted{}, {LabelPower{label, exponent}});
}

std::uint32_t TermVector::exponent(LabelId label) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), label,
                             [](const LabelPower& e, LabelId l) { return e.label < l; });
  return (it != entries_.end() && it->label == label) ? it->exponent : 0;
}

std::uint32_t TermVector::degree() const noexcept {
  std::uint32_t sum = 0;
  for (const auto& e : entries_) sum += e.exponent;
  return sum;
}

std::uint64_t manhattan_distance(const TermVector& a, const TermVector& b) noexcept {
  auto x = a.entries();
  auto y = b.entries();
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint64_t d = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].label == y[j].label) {
      d += x[i].exponent > y[j].exponent ? x[i].exponent - y[j].exponent
                                         : y[j].exponent - x[i].exponent;
      ++i;
      ++j;
    } else if (x[i].label < y[j].label) {
      d += x[i++].exponent;
    } else {
      d += y[j++].exponent;
    }
  }
  for (; i < x.size(); ++i) d += x[i].exponent;
  for (; j < y.size(); ++j) d += y[j].exponent;
  return d;
}

std::uint64_t dot(const TermVector& a, const TermVector& b) noexcept {
  auto x = a.entries();
  auto y = b.entries();
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint64_t s = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].label == y[j].label) {
      s += std::uint64_t{x[i].exponent} * y[j].exponent;
      ++i;
      ++j;
    } else if (x[i].label < y[j].label) {
      ++i;
    } else {
      ++j;
    }
  }
  return s;
}

std::uint64_t squared_norm(const TermVector& a) noexcept {
  std::uint64_t s = 0;
  for (const auto& e : a.entries()) s += std::uint64_t{e.exponent} * e.exponent;
  return s;
}

TermVector multiply(const TermVector& a, const TermVector& b) {
  auto x = a.entries();
  auto y = b.entries();
  std::vector<LabelPower> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].label == y[j].label) {
      out.push_back({x[i].label, x[i].exponent + y[j].exponent});
      ++i;
      ++j;
    } else if (x[i].label < y[j].label) {
      out.push_back(x[i++]);
    } else {
      out.push_back(y[j++]);
    }
  }
  out.insert(out.end(), x.begin() + static_cast<std::ptrdiff_t>(i), x.end());
  out.insert(out.end(), y.begin() + static_cast<std::ptrdiff_t>(j), y.end());
  return TermVector(TermVector::Sorted{}, std::move(out));
}

void PrefixPath::push(LabelId label) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), label,
                             [](const LabelPower& e, LabelId l) { return e.label < l; });
  if (it != entries_.end() && it->label == label) {
    ++it->exponent;
  } else {
    entries_.insert(it, LabelPower{label, 1});
  }
}

void PrefixPath::pop(LabelId label) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), label,
                             [](const LabelPower& e, LabelId l) { return e.label < l; });
  if (--it->exponent == 0) {
    entries_.erase(it);
  }
}

}  // namespace syncov
