#pragma once

#include <array>
#include <string_view>

#include "gauntlet/core/profile.hpp"

namespace gauntlet::service {

enum class DifficultyLevel : std::uint8_t { Easy, Moderate, Difficult, AlwaysOn };

std::string_view to_string(DifficultyLevel level);
/// Accepts "easy", "moderate", "difficult", "always_on". Throws ConfigError.
DifficultyLevel difficulty_from_string(std::string_view s);

struct DifficultyKnobs {
  double double_prompt_probability = 0.15;
  double flexibility_scale = 1.0;  // in (0, 1]
  friend bool operator==(const DifficultyKnobs&, const DifficultyKnobs&) = default;
};

/// Knobs per level, indexed by DifficultyLevel.
struct DifficultyTable {
  std::array<DifficultyKnobs, 4> levels{{{0.05, 1.0}, {0.15, 1.0}, {0.40, 0.8}, {0.60, 0.6}}};

  [[nodiscard]] const DifficultyKnobs& at(DifficultyLevel level) const {
    return levels[static_cast<std::size_t>(level)];
  }
  /// Throws ConfigError on out-of-range knobs.
  void validate() const;
  friend bool operator==(const DifficultyTable&, const DifficultyTable&) = default;
};

/// Suspiciousness in [0, 1] from automation signals. Monotone in each signal.
double threat_score(const ClientProfile& profile);

/// Adaptive escalation: more double prompts, less tolerance as score grows.
/// score 0 returns `base` unchanged.
DifficultyKnobs escalate(const DifficultyKnobs& base, double score);

}  // namespace gauntlet::service
