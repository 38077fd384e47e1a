#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace syncov {

using LabelId = std::uint32_t;

/// Ordered set of dependency-label strings. A label's index is assigned on
/// first sight and never changes afterwards.
class LabelVocabulary {
 public:
  LabelVocabulary() = default;

  /// Throws StructureError on duplicate labels.
  explicit LabelVocabulary(std::vector<std::string> labels);

  LabelId intern(std::string_view label);
  std::optional<LabelId> find(std::string_view label) const;

  /// Like find(), but an unknown label is an IngestError.
  LabelId at(std::string_view label) const;

  const std::string& name(LabelId id) const;
  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  friend bool operator==(const LabelVocabulary& a, const LabelVocabulary& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::map<std::string, LabelId, std::less<>> index_;
};

}  // namespace syncov
