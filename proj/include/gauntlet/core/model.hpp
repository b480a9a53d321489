#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gauntlet/core/clock.hpp"
#include "gauntlet/core/image.hpp"
#include "gauntlet/core/rng.hpp"

namespace gauntlet {

/// Index of a category within a CategorySet.
enum class CategoryId : std::uint8_t {};

constexpr std::size_t index_of(CategoryId id) { return static_cast<std::size_t>(id); }
constexpr CategoryId category_at(std::size_t index) { return static_cast<CategoryId>(index); }

/// The configured classes; names are short, lowercase and unique.
class CategorySet {
 public:
  static constexpr std::size_t kMaxCategories = 32;

  explicit CategorySet(std::vector<std::string> names);
  /// The nine classes that hCaptcha-style challenges draw from.
  static CategorySet defaults();

  [[nodiscard]] std::size_t size() const { return names_.size(); }
  [[nodiscard]] const std::string& name(CategoryId id) const { return names_.at(index_of(id)); }
  [[nodiscard]] std::optional<CategoryId> find(std::string_view name) const;
  [[nodiscard]] CategoryId require(std::string_view name) const;
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
};

/// One candidate image. `truth` never leaves the service.
struct ImageTile {
  std::string tile_id;
  Bitmap bitmap;
  CategoryId truth{};
  std::uint64_t pool_slot = 0;
};

enum class PromptType : std::uint8_t { Single, Double };

std::string_view to_string(PromptType type);

struct Round {
  std::vector<ImageTile> tiles;

  /// Number of tiles whose ground truth is `target`.
  [[nodiscard]] int target_count(CategoryId target) const;
};

struct Challenge {
  std::string challenge_id;
  std::string prompt_text;
  CategoryId target{};
  PromptType prompt_type = PromptType::Single;
  std::vector<Round> rounds;
  Millis issued_at{0};
  Millis expires_at{0};
  /// Multiplier on non-Exact pass probabilities; 1.0 unless the service escalates.
  double flexibility_scale = 1.0;
};

std::string prompt_text_for(std::string_view category_name);

/// Chosen tile ids, one list per round.
struct Selection {
  std::string challenge_id;
  std::vector<std::vector<std::string>> rounds;
};

/// Counts of a submitted round against ground truth.
struct GradeCondition {
  int targets = 0;  // N
  int correct = 0;  // C
  int wrong = 0;    // W
  PromptType prompt_type = PromptType::Single;

  friend bool operator==(const GradeCondition&, const GradeCondition&) = default;
};

enum class ConditionClass : std::uint8_t { Exact, AllCorrectPlusWrong, MissingOne, MissingOnePlusWrong, Other };

inline constexpr std::size_t kConditionClassCount = 5;
inline constexpr std::array<ConditionClass, kConditionClassCount> kAllConditionClasses = {
    ConditionClass::Exact, ConditionClass::AllCorrectPlusWrong, ConditionClass::MissingOne,
    ConditionClass::MissingOnePlusWrong, ConditionClass::Other};

std::string_view to_string(ConditionClass c);
std::optional<ConditionClass> condition_class_from_string(std::string_view s);

/// Counts (N, C, W) for `chosen` within `round`. Throws InvalidSelection on
/// unknown or repeated tile ids.
GradeCondition condition_of(const Round& round, CategoryId target, PromptType prompt_type,
                            const std::vector<std::string>& chosen);

/// Which flexibility row a condition falls under, independent of any policy.
ConditionClass condition_class(const GradeCondition& cond);

/// Pass probabilities per (prompt type, condition class).
///
/// Exact always maps to 1 and Other to 0; the four tolerance classes carry
/// the configured values.
class GradePolicy {
 public:
  /// Observed flexibility (73.5 / 24.5 / 71.5 / 61.5 / 20.0 / 30.5 %).
  static GradePolicy flexible();
  /// Only exact solutions pass.
  static GradePolicy strict();

  [[nodiscard]] double probability(PromptType type, ConditionClass c) const;
  /// Throws ConfigError for Exact/Other or values outside [0, 1].
  void set(PromptType type, ConditionClass c, double p);

  friend bool operator==(const GradePolicy&, const GradePolicy&) = default;

 private:
  GradePolicy();
  std::array<std::array<double, kConditionClassCount>, 2> table_{};
};

std::pair<ConditionClass, double> classify_condition(const GradeCondition& cond, const GradePolicy& policy);

/// Challenge-level pass probability for per-round classes.
///
/// Single prompt: the policy value for the only round. Double prompt: the
/// double-row value of the worst non-Exact round, applied once; two Exact
/// rounds pass with certainty. `scale` multiplies every non-Exact value.
double challenge_pass_probability(const std::vector<ConditionClass>& round_classes, PromptType type,
                                  const GradePolicy& policy, double scale);

struct GradeDecision {
  bool pass = false;
  std::vector<GradeCondition> conditions;
  std::vector<ConditionClass> classes;
  double probability = 0.0;
};

/// Grades a complete selection. Draws exactly one uniform from `rng` so the
/// stream position does not depend on the outcome.
GradeDecision grade_challenge(const Challenge& challenge, const Selection& selection, const GradePolicy& policy,
                              Rng& rng);

}  // namespace gauntlet
