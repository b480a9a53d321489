#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gauntlet/classifiers/labeler.hpp"

namespace gauntlet::classifiers {

struct Label {
  std::string name;
  double score = 1.0;
  friend bool operator==(const Label&, const Label&) = default;
};

/// Free-text labels with confidences in [0, 1]; names unique ignoring case.
class LabelSet {
 public:
  LabelSet() = default;
  /// Throws ConfigError on a duplicate name or a score outside [0, 1].
  explicit LabelSet(std::vector<Label> labels);

  /// Returns false, leaving the set unchanged, if the name is already present.
  bool add(Label label);
  [[nodiscard]] bool contains(std::string_view name) const;
  [[nodiscard]] const std::vector<Label>& labels() const { return labels_; }
  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] bool empty() const { return labels_.empty(); }
  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  std::vector<Label> labels_;
};

std::string lowercase(std::string_view s);

/// Category to synonym list, matched case-insensitively.
class LabelMapping {
 public:
  /// `synonyms[i]` belongs to category i. Throws ConfigError if any category
  /// has no synonym.
  explicit LabelMapping(std::vector<std::vector<std::string>> synonyms);

  /// Synonyms for the nine default categories.
  static LabelMapping defaults();

  [[nodiscard]] std::size_t size() const { return synonyms_.size(); }
  [[nodiscard]] const std::vector<std::string>& synonyms(CategoryId id) const {
    return synonyms_.at(index_of(id));
  }
  [[nodiscard]] bool matches(std::string_view label, CategoryId id) const;

 private:
  std::vector<std::vector<std::string>> synonyms_;  // lowercased
};

/// True iff some label is a synonym of `target`.
bool match_target(const LabelSet& labels, const LabelMapping& mapping, CategoryId target);

/// Every category with at least one matching label.
CategoryMask matched_categories(const LabelSet& labels, const LabelMapping& mapping);

}  // namespace gauntlet::classifiers
