#pragma once

#include <optional>
#include <vector>

#include "gauntlet/core/model.hpp"
#include "gauntlet/service/difficulty.hpp"
#include "gauntlet/tiles/pool.hpp"

namespace gauntlet::service {

/// Shape of issued rounds: tiles per round and the distribution of target
/// count N per round.
struct ShapeConfig {
  int tiles_per_round = 9;
  /// Weight of N = i + 1; size must equal tiles_per_round.
  std::vector<double> target_weights = {0.08, 0.24, 0.24, 0.17, 0.12, 0.09, 0.06, 0.0, 0.0};

  /// Throws ConfigError on a bad size, negative or all-zero weights.
  void validate() const;
  friend bool operator==(const ShapeConfig&, const ShapeConfig&) = default;
};

/// Forces parts of a challenge; unset fields are drawn as usual.
struct ChallengeOverrides {
  std::optional<CategoryId> target;
  std::optional<PromptType> prompt_type;
  std::optional<int> targets;  // N for every round
};

class ChallengeFactory {
 public:
  /// Throws ConfigError for fewer than two categories or an invalid shape.
  ChallengeFactory(CategorySet categories, ShapeConfig shape);

  /// Draws structure from `rng` and tile content from `pool`.
  Challenge make(tiles::TilePool& pool, Rng& rng, const DifficultyKnobs& knobs, Millis now, Millis payload_ttl,
                 const ChallengeOverrides& overrides = {}) const;

  [[nodiscard]] const CategorySet& categories() const { return categories_; }
  [[nodiscard]] const ShapeConfig& shape() const { return shape_; }

 private:
  CategorySet categories_;
  ShapeConfig shape_;
};

std::string random_id(Rng& rng);

}  // namespace gauntlet::service
