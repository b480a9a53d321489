#include "gauntlet/analysis/oracle.hpp"

#include <bit>
#include <cmath>
#include <map>

#include "gauntlet/core/error.hpp"

namespace gauntlet::analysis {

SelectionModel SelectionModel::from_confusion(const classifiers::ConfusionMatrix& matrix, CategoryId target) {
  const std::size_t t = index_of(target);
  const std::size_t k = matrix.size();
  if (t >= k) throw ConfigError("target outside confusion matrix");
  double column = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (i != t) column += matrix.at(i, t);
  }
  return {matrix.at(t, t), k > 1 ? column / static_cast<double>(k - 1) : 0.0};
}

void SelectionModel::validate() const {
  if (!(p_t >= 0.0 && p_t <= 1.0 && p_f >= 0.0 && p_f <= 1.0)) throw ConfigError("selection probabilities outside [0, 1]");
}

namespace {

void check_shape(int targets, int tiles) {
  if (tiles < 1 || targets < 0 || targets > tiles) throw ConfigError("need 0 <= N <= m and m >= 1");
}

std::size_t slot(ConditionClass c) { return static_cast<std::size_t>(c); }

}  // namespace

ClassDistribution round_classes_bruteforce(const SelectionModel& model, int targets, int tiles) {
  model.validate();
  check_shape(targets, tiles);
  if (tiles > 20) throw SizeError("brute force is limited to m <= 20; use the dynamic program");
  const std::uint32_t target_bits = (std::uint32_t{1} << targets) - 1;  // tiles 0..N-1 are targets
  ClassDistribution out{};
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << tiles); ++mask) {
    double p = 1.0;
    for (int i = 0; i < tiles; ++i) {
      const bool chosen = (mask >> i) & 1U;
      const double q = i < targets ? model.p_t : model.p_f;
      p *= chosen ? q : 1.0 - q;
    }
    const GradeCondition cond{targets, std::popcount(mask & target_bits), std::popcount(mask & ~target_bits),
                              PromptType::Single};
    out[slot(condition_class(cond))] += p;
  }
  return out;
}

ClassDistribution round_classes_dp(const SelectionModel& model, int targets, int tiles) {
  model.validate();
  check_shape(targets, tiles);
  // dp[c][w]: probability of c correct and min(w, 2) wrong selections so far.
  std::vector<std::array<double, 3>> dp(static_cast<std::size_t>(targets) + 1, {0.0, 0.0, 0.0});
  dp[0][0] = 1.0;
  for (int i = 0; i < targets; ++i) {
    for (int c = i; c >= 0; --c) {
      for (int w = 0; w < 3; ++w) {
        const double v = dp[static_cast<std::size_t>(c)][static_cast<std::size_t>(w)];
        dp[static_cast<std::size_t>(c) + 1][static_cast<std::size_t>(w)] += v * model.p_t;
        dp[static_cast<std::size_t>(c)][static_cast<std::size_t>(w)] = v * (1.0 - model.p_t);
      }
    }
  }
  for (int i = targets; i < tiles; ++i) {
    for (auto& row : dp) {
      const std::array<double, 3> v = row;
      row[0] = v[0] * (1.0 - model.p_f);
      row[1] = v[1] * (1.0 - model.p_f) + v[0] * model.p_f;
      row[2] = v[2] + v[1] * model.p_f;
    }
  }
  ClassDistribution out{};
  for (int c = 0; c <= targets; ++c) {
    for (int w = 0; w < 3; ++w) {
      const GradeCondition cond{targets, c, w, PromptType::Single};
      out[slot(condition_class(cond))] += dp[static_cast<std::size_t>(c)][static_cast<std::size_t>(w)];
    }
  }
  return out;
}

double pass_probability_from_rounds(std::span<const ClassDistribution> rounds, PromptType type,
                                    const GradePolicy& policy, double scale) {
  const std::size_t expected = type == PromptType::Double ? 2 : 1;
  if (rounds.size() != expected) throw ConfigError("round count does not match prompt type");
  double total = 0.0;
  if (expected == 1) {
    for (auto c : kAllConditionClasses) {
      total += rounds[0][slot(c)] * challenge_pass_probability({c}, type, policy, scale);
    }
    return total;
  }
  for (auto c1 : kAllConditionClasses) {
    for (auto c2 : kAllConditionClasses) {
      total += rounds[0][slot(c1)] * rounds[1][slot(c2)] * challenge_pass_probability({c1, c2}, type, policy, scale);
    }
  }
  return total;
}

namespace {

double combine(const ClassDistribution& d, PromptType type, const GradePolicy& policy, double scale) {
  if (type == PromptType::Single) return pass_probability_from_rounds(std::span(&d, 1), type, policy, scale);
  const std::array<ClassDistribution, 2> both{d, d};
  return pass_probability_from_rounds(both, type, policy, scale);
}

}  // namespace

double pass_probability_bruteforce(const SelectionModel& model, int targets, int tiles, const GradePolicy& policy,
                                   PromptType type, double scale) {
  return combine(round_classes_bruteforce(model, targets, tiles), type, policy, scale);
}

double pass_probability_dp(const SelectionModel& model, int targets, int tiles, const GradePolicy& policy,
                           PromptType type, double scale) {
  return combine(round_classes_dp(model, targets, tiles), type, policy, scale);
}

namespace {

double model_accuracy(const SelectionModel& model, const GradePolicy& policy, const ShapeDistribution& shape) {
  const auto& w = shape.target_weights;
  std::vector<ClassDistribution> per_n(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0) per_n[i] = round_classes_dp(model, static_cast<int>(i) + 1, shape.tiles_per_round);
  }
  double single = 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) continue;
    single += w[i] * pass_probability_from_rounds(std::span(&per_n[i], 1), PromptType::Single, policy,
                                                  shape.flexibility_scale);
    if (shape.double_prompt_probability == 0.0) continue;
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w[j] == 0.0) continue;
      const std::array<ClassDistribution, 2> rounds{per_n[i], per_n[j]};
      twice += w[i] * w[j] *
               pass_probability_from_rounds(rounds, PromptType::Double, policy, shape.flexibility_scale);
    }
  }
  const double dp = shape.double_prompt_probability;
  return (1.0 - dp) * single + dp * twice;
}

void check_distribution(const ShapeDistribution& shape) {
  if (shape.target_weights.size() != static_cast<std::size_t>(shape.tiles_per_round)) {
    throw ConfigError("target_weights needs one weight per N in 1..m");
  }
  double total = 0.0;
  for (double v : shape.target_weights) {
    if (!(v >= 0.0)) throw ConfigError("negative target weight");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ConfigError("target weights must sum to 1");
  if (!(shape.double_prompt_probability >= 0.0 && shape.double_prompt_probability <= 1.0)) {
    throw ConfigError("double_prompt_probability outside [0, 1]");
  }
}

}  // namespace

double expected_campaign_accuracy(std::span<const SelectionModel> per_target, const GradePolicy& policy,
                                  const ShapeDistribution& shape) {
  check_distribution(shape);
  if (per_target.empty()) throw ConfigError("need at least one target model");
  // Identical models are evaluated once so a degenerate mixture is exact.
  std::map<std::pair<double, double>, std::size_t> counts;
  for (const auto& m : per_target) ++counts[{m.p_t, m.p_f}];
  double total = 0.0;
  for (const auto& [key, count] : counts) {
    const double weight = static_cast<double>(count) / static_cast<double>(per_target.size());
    total += weight * model_accuracy({key.first, key.second}, policy, shape);
  }
  return total;
}

double expected_campaign_accuracy(const classifiers::ConfusionMatrix& matrix, const GradePolicy& policy,
                                  const ShapeDistribution& shape) {
  std::vector<SelectionModel> models;
  for (std::size_t k = 0; k < matrix.size(); ++k) models.push_back(SelectionModel::from_confusion(matrix, category_at(k)));
  return expected_campaign_accuracy(models, policy, shape);
}

Interval binomial_interval(double p, std::uint64_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double half = z * std::sqrt(p * (1.0 - p) / nn) + 0.5 / nn;
  return {std::max(0.0, p - half), std::min(1.0, p + half)};
}

}  // namespace gauntlet::analysis
