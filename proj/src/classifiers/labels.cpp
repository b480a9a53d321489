#include "gauntlet/classifiers/labels.hpp"

#include <algorithm>
#include <cctype>

#include "gauntlet/core/error.hpp"

namespace gauntlet::classifiers {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::ranges::transform(out, out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

LabelSet::LabelSet(std::vector<Label> labels) {
  for (auto& l : labels) {
    if (!add(std::move(l))) throw ConfigError("duplicate label in label set");
  }
}

bool LabelSet::add(Label label) {
  if (!(label.score >= 0.0 && label.score <= 1.0)) throw ConfigError("label score outside [0, 1]");
  if (contains(label.name)) return false;
  labels_.push_back(std::move(label));
  return true;
}

bool LabelSet::contains(std::string_view name) const {
  const auto key = lowercase(name);
  return std::ranges::any_of(labels_, [&](const Label& l) { return lowercase(l.name) == key; });
}

LabelMapping::LabelMapping(std::vector<std::vector<std::string>> synonyms) {
  if (synonyms.empty() || synonyms.size() > CategorySet::kMaxCategories) throw ConfigError("label mapping size");
  for (auto& list : synonyms) {
    if (list.empty()) throw ConfigError("every category needs at least one synonym");
    for (auto& s : list) s = lowercase(s);
  }
  synonyms_ = std::move(synonyms);
}

LabelMapping LabelMapping::defaults() {
  return LabelMapping({
      {"airplane", "aeroplane", "airliner", "jet"},
      {"bicycle", "bike"},
      {"boat", "ship", "watercraft"},
      {"bus", "motorbus"},
      {"car", "automobile", "sedan"},
      {"motorcycle", "motorbike"},
      {"seaplane", "floatplane"},
      {"train", "locomotive", "railway"},
      {"truck", "trailer truck", "tow truck"},
  });
}

bool LabelMapping::matches(std::string_view label, CategoryId id) const {
  const auto key = lowercase(label);
  const auto& list = synonyms(id);
  return std::ranges::find(list, key) != list.end();
}

bool match_target(const LabelSet& labels, const LabelMapping& mapping, CategoryId target) {
  return std::ranges::any_of(labels.labels(), [&](const Label& l) { return mapping.matches(l.name, target); });
}

CategoryMask matched_categories(const LabelSet& labels, const LabelMapping& mapping) {
  CategoryMask mask;
  for (std::size_t k = 0; k < mapping.size(); ++k) {
    if (match_target(labels, mapping, category_at(k))) mask.add(category_at(k));
  }
  return mask;
}

}  // namespace gauntlet::classifiers
