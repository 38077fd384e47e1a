#include "syncov/labels.hpp"

#include "syncov/error.hpp"

namespace syncov {

LabelVocabulary::LabelVocabulary(std::vector<std::string> labels) {
  for (auto& label : labels) {
    if (find(label)) {
      throw StructureError("duplicate label in vocabulary: " + label);
    }
    intern(label);
  }
}

LabelId LabelVocabulary::intern(std::string_view label) {
  if (auto it = index_.find(label); it != index_.end()) {
    return it->second;
  }
  const auto id = static_cast<LabelId>(labels_.size());
  labels_.emplace_back(label);
  index_.emplace(labels_.back(), id);
  return id;
}

std::optional<LabelId> LabelVocabulary::find(std::string_view label) const {
  if (auto it = index_.find(label); it != index_.end()) {
    return it->second;
  }
  return std::nullopt;
}

LabelId LabelVocabulary::at(std::string_view label) const {
  if (auto id = find(label)) {
    return *id;
  }
  throw IngestError("unknown dependency label '" + std::string(label) + "'");
}

const std::string& LabelVocabulary::name(LabelId id) const {
  if (id >= labels_.size()) {
    throw IngestError("label id " + std::to_string(id) + " outside vocabulary of size " +
                      std::to_string(labels_.size()));
  }
  return labels_[id];
}

}  // namespace syncov
