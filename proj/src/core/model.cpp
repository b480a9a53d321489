#include "gauntlet/core/model.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "gauntlet/core/error.hpp"

namespace gauntlet {

CategorySet::CategorySet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw ConfigError("category set is empty");
  if (names_.size() > kMaxCategories) throw ConfigError("too many categories");
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw ConfigError("category name is empty");
    if (std::any_of(n.begin(), n.end(), [](unsigned char c) { return std::isupper(c); })) {
      throw ConfigError("category name must be lowercase: " + n);
    }
    if (!seen.insert(n).second) throw ConfigError("duplicate category: " + n);
  }
}

CategorySet CategorySet::defaults() {
  return CategorySet({"airplane", "bicycle", "boat", "bus", "car", "motorcycle", "seaplane", "train", "truck"});
}

std::optional<CategoryId> CategorySet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return category_at(i);
  }
  return std::nullopt;
}

CategoryId CategorySet::require(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw ConfigError("unknown category: " + std::string(name));
}

std::string_view to_string(PromptType type) { return type == PromptType::Single ? "single" : "double"; }

int Round::target_count(CategoryId target) const {
  return static_cast<int>(std::count_if(tiles.begin(), tiles.end(), [&](const ImageTile& t) { return t.truth == target; }));
}

std::string prompt_text_for(std::string_view category_name) {
  return "Please click each image containing a " + std::string(category_name);
}

std::string_view to_string(ConditionClass c) {
  switch (c) {
    case ConditionClass::Exact: return "exact";
    case ConditionClass::AllCorrectPlusWrong: return "all_correct_plus_wrong";
    case ConditionClass::MissingOne: return "missing_one";
    case ConditionClass::MissingOnePlusWrong: return "missing_one_plus_wrong";
    case ConditionClass::Other: return "other";
  }
  return "other";
}

std::optional<ConditionClass> condition_class_from_string(std::string_view s) {
  for (auto c : kAllConditionClasses) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

GradeCondition condition_of(const Round& round, CategoryId target, PromptType prompt_type,
                            const std::vector<std::string>& chosen) {
  GradeCondition cond;
  cond.prompt_type = prompt_type;
  cond.targets = round.target_count(target);
  std::unordered_set<std::string_view> seen;
  for (const auto& id : chosen) {
    if (!seen.insert(id).second) throw InvalidSelection("tile selected twice: " + id);
    auto it = std::find_if(round.tiles.begin(), round.tiles.end(), [&](const ImageTile& t) { return t.tile_id == id; });
    if (it == round.tiles.end()) throw InvalidSelection("unknown tile id: " + id);
    if (it->truth == target) {
      ++cond.correct;
    } else {
      ++cond.wrong;
    }
  }
  return cond;
}

ConditionClass condition_class(const GradeCondition& cond) {
  const int n = cond.targets;
  if (cond.correct == n && cond.wrong == 0) return ConditionClass::Exact;
  if (cond.correct == n && cond.wrong == 1) return ConditionClass::AllCorrectPlusWrong;
  if (n >= 3 && cond.correct == n - 1 && cond.wrong == 0) return ConditionClass::MissingOne;
  if (n >= 3 && cond.correct == n - 1 && cond.wrong == 1) return ConditionClass::MissingOnePlusWrong;
  return ConditionClass::Other;
}

GradePolicy::GradePolicy() {
  for (auto& row : table_) {
    row.fill(0.0);
    row[static_cast<std::size_t>(ConditionClass::Exact)] = 1.0;
  }
}

GradePolicy GradePolicy::flexible() {
  GradePolicy p;
  p.set(PromptType::Single, ConditionClass::AllCorrectPlusWrong, 0.735);
  p.set(PromptType::Double, ConditionClass::AllCorrectPlusWrong, 0.245);
  p.set(PromptType::Single, ConditionClass::MissingOne, 0.715);
  p.set(PromptType::Double, ConditionClass::MissingOne, 0.615);
  p.set(PromptType::Single, ConditionClass::MissingOnePlusWrong, 0.200);
  p.set(PromptType::Double, ConditionClass::MissingOnePlusWrong, 0.305);
  return p;
}

GradePolicy GradePolicy::strict() { return GradePolicy(); }

double GradePolicy::probability(PromptType type, ConditionClass c) const {
  return table_[static_cast<std::size_t>(type)][static_cast<std::size_t>(c)];
}

void GradePolicy::set(PromptType type, ConditionClass c, double p) {
  if (c == ConditionClass::Exact || c == ConditionClass::Other) {
    throw ConfigError("exact and other rows are fixed at 1 and 0");
  }
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("pass probability outside [0, 1]");
  table_[static_cast<std::size_t>(type)][static_cast<std::size_t>(c)] = p;
}

std::pair<ConditionClass, double> classify_condition(const GradeCondition& cond, const GradePolicy& policy) {
  const ConditionClass c = condition_class(cond);
  return {c, policy.probability(cond.prompt_type, c)};
}

double challenge_pass_probability(const std::vector<ConditionClass>& round_classes, PromptType type,
                                  const GradePolicy& policy, double scale) {
  double p = 1.0;
  for (ConditionClass c : round_classes) {
    if (c == ConditionClass::Exact) continue;
    p = std::min(p, policy.probability(type, c) * scale);
  }
  return p;
}

GradeDecision grade_challenge(const Challenge& challenge, const Selection& selection, const GradePolicy& policy,
                              Rng& rng) {
  if (selection.challenge_id != challenge.challenge_id) throw InvalidSelection("selection is for another challenge");
  if (selection.rounds.size() != challenge.rounds.size()) throw InvalidSelection("selection round count mismatch");
  GradeDecision decision;
  for (std::size_t r = 0; r < challenge.rounds.size(); ++r) {
    auto cond = condition_of(challenge.rounds[r], challenge.target, challenge.prompt_type, selection.rounds[r]);
    decision.classes.push_back(condition_class(cond));
    decision.conditions.push_back(cond);
  }
  decision.probability =
      challenge_pass_probability(decision.classes, challenge.prompt_type, policy, challenge.flexibility_scale);
  const double u = rng.uniform();
  decision.pass = u < decision.probability;
  return decision;
}

}  // namespace gauntlet
