#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "syncov/labels.hpp"

namespace syncov {

struct LabelPower {
  LabelId label = 0;
  std::uint32_t exponent = 0;

  friend auto operator<=>(const LabelPower&, const LabelPower&) = default;
};

/// Exponent vector of one monomial, stored sparsely: entries sorted by label,
/// every stored exponent >= 1. Comparison is lexicographic over the entries,
/// which is the canonical term order.
class TermVector {
 public:
  TermVector() = default;

  /// Accepts entries in any order; duplicate labels are summed and zero
  /// exponents dropped.
  explicit TermVector(std::vector<LabelPower> entries);

  static TermVector single(LabelId label, std::uint32_t exponent = 1);

  std::span<const LabelPower> entries() const noexcept { return entries_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  std::uint32_t exponent(LabelId label) const noexcept;

  /// Sum of exponents. For simplified-polynomial terms this is the length of
  /// the root-to-node path.
  std::uint32_t degree() const noexcept;

  friend auto operator<=>(const TermVector&, const TermVector&) = default;
  friend bool operator==(const TermVector&, const TermVector&) = default;

 private:
  struct Sorted {};
  TermVector(Sorted, std::vector<LabelPower> entries) : entries_(std::move(entries)) {}

  friend TermVector multiply(const TermVector&, const TermVector&);
  friend class PrefixPath;

  std::vector<LabelPower> entries_;
};

/// L1 distance between exponent vectors, O(nnz(a) + nnz(b)).
std::uint64_t manhattan_distance(const TermVector& a, const TermVector& b) noexcept;

/// Dot product and squared L2 norm, used by the cosine measure.
std::uint64_t dot(const TermVector& a, const TermVector& b) noexcept;
std::uint64_t squared_norm(const TermVector& a) noexcept;

/// Monomial product: exponents add.
TermVector multiply(const TermVector& a, const TermVector& b);

/// Running root-to-node label counts, extended and shrunk one label at a time
/// during a depth-first walk.
class PrefixPath {
 public:
  void push(LabelId label);
  void pop(LabelId label);
  std::size_t nnz() const noexcept { return entries_.size(); }
  TermVector snapshot() const { return TermVector(TermVector::Sorted{}, entries_); }

 private:
  std::vector<LabelPower> entries_;
};

}  // namespace syncov
