#pragma once

#include <array>
#include <span>
#include <vector>

#include "gauntlet/classifiers/confusion.hpp"
#include "gauntlet/core/model.hpp"

namespace gauntlet::analysis {

/// Independent per-tile selection probabilities for one target category.
struct SelectionModel {
  double p_t = 1.0;  // P(select | target tile)
  double p_f = 0.0;  // P(select | non-target tile)

  /// p_t = diagonal entry of the target; p_f = mean of the target column over
  /// the other rows (non-target tiles are uniform over the other classes).
  static SelectionModel from_confusion(const classifiers::ConfusionMatrix& matrix, CategoryId target);
  /// Throws ConfigError unless both lie in [0, 1].
  void validate() const;
};

/// Probability of each condition class for one round, indexed by ConditionClass.
using ClassDistribution = std::array<double, kConditionClassCount>;

/// By enumerating all 2^m selection outcomes. Throws SizeError for m > 20.
ClassDistribution round_classes_bruteforce(const SelectionModel& model, int targets, int tiles);
/// By dynamic programming over (correct selected, min(wrong selected, 2)).
ClassDistribution round_classes_dp(const SelectionModel& model, int targets, int tiles);

/// Combines per-round class distributions into a challenge pass probability
/// under the same rule the service grades with.
double pass_probability_from_rounds(std::span<const ClassDistribution> rounds, PromptType type,
                                    const GradePolicy& policy, double scale = 1.0);

/// Pass probability of a challenge whose every round has `targets` of `tiles`.
/// Throws SizeError for m > 20.
double pass_probability_bruteforce(const SelectionModel& model, int targets, int tiles, const GradePolicy& policy,
                                   PromptType type, double scale = 1.0);
double pass_probability_dp(const SelectionModel& model, int targets, int tiles, const GradePolicy& policy,
                           PromptType type, double scale = 1.0);

/// Distribution of challenge shapes: N per round drawn from `target_weights`
/// (weight i is N = i + 1), rounds independent, double prompt with the given
/// probability, target category uniform.
struct ShapeDistribution {
  int tiles_per_round = 9;
  std::vector<double> target_weights;
  double double_prompt_probability = 0.15;
  double flexibility_scale = 1.0;
};

/// Expected challenge pass rate; `per_target[k]` is the model when category
/// k is the target. Throws ConfigError if weights do not sum to 1 +/- 1e-9.
double expected_campaign_accuracy(std::span<const SelectionModel> per_target, const GradePolicy& policy,
                                  const ShapeDistribution& shape);
/// Same, with per-target models derived from a confusion matrix.
double expected_campaign_accuracy(const classifiers::ConfusionMatrix& matrix, const GradePolicy& policy,
                                  const ShapeDistribution& shape);

/// Two-sided binomial confidence interval for a proportion (normal
/// approximation with continuity correction).
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  [[nodiscard]] bool contains(double x) const { return x >= lo && x <= hi; }
};
Interval binomial_interval(double p, std::uint64_t n, double z = 2.5758293035489004);

}  // namespace gauntlet::analysis
