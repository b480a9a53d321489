#include "gauntlet/service/challenge_factory.hpp"

#include <cstdio>
#include <numeric>

#include "gauntlet/core/error.hpp"

namespace gauntlet::service {

void ShapeConfig::validate() const {
  if (tiles_per_round < 1 || tiles_per_round > 20) throw ConfigError("tiles_per_round must be in [1, 20]");
  if (target_weights.size() != static_cast<std::size_t>(tiles_per_round)) {
    throw ConfigError("target_weights needs one weight per possible N in 1..tiles_per_round");
  }
  double total = 0.0;
  for (double w : target_weights) {
    if (!(w >= 0.0)) throw ConfigError("target weights must be non-negative");
    total += w;
  }
  if (!(total > 0.0)) throw ConfigError("target weights must not all be zero");
}

std::string random_id(Rng& rng) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng.next_u64()));
  return buf;
}

ChallengeFactory::ChallengeFactory(CategorySet categories, ShapeConfig shape)
    : categories_(std::move(categories)), shape_(std::move(shape)) {
  if (categories_.size() < 2) throw ConfigError("need at least two categories");
  shape_.validate();
}

Challenge ChallengeFactory::make(tiles::TilePool& pool, Rng& rng, const DifficultyKnobs& knobs, Millis now,
                                 Millis payload_ttl, const ChallengeOverrides& overrides) const {
  const std::size_t k = categories_.size();
  const int m = shape_.tiles_per_round;
  if (overrides.targets && (*overrides.targets < 1 || *overrides.targets > m)) {
    throw ConfigError("forced target count outside [1, tiles_per_round]");
  }
  if (overrides.target && index_of(*overrides.target) >= k) throw ConfigError("forced target outside category set");

  Challenge c;
  c.challenge_id = random_id(rng);
  const auto drawn_target = category_at(rng.below(k));
  c.target = overrides.target.value_or(drawn_target);
  const bool drawn_double = rng.bernoulli(knobs.double_prompt_probability);
  c.prompt_type = overrides.prompt_type.value_or(drawn_double ? PromptType::Double : PromptType::Single);
  c.prompt_text = prompt_text_for(categories_.name(c.target));
  c.issued_at = now;
  c.expires_at = now + payload_ttl;
  c.flexibility_scale = knobs.flexibility_scale;

  const int round_count = c.prompt_type == PromptType::Double ? 2 : 1;
  for (int r = 0; r < round_count; ++r) {
    const int drawn_n = static_cast<int>(rng.weighted(shape_.target_weights)) + 1;
    const int n = overrides.targets.value_or(drawn_n);
    // First n entries of a partial shuffle are the target positions.
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    for (int i = 0; i < n; ++i) {
      const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - i)));
      std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
    std::vector<CategoryId> cats(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      const auto pos = static_cast<std::size_t>(order[static_cast<std::size_t>(i)]);
      if (i < n) {
        cats[pos] = c.target;
      } else {
        auto other = rng.below(k - 1);
        if (other >= index_of(c.target)) ++other;
        cats[pos] = category_at(other);
      }
    }
    Round round;
    for (int i = 0; i < m; ++i) {
      const auto drawn = pool.draw(cats[static_cast<std::size_t>(i)]);
      round.tiles.push_back({random_id(rng), drawn.bitmap, drawn.category, drawn.slot});
    }
    c.rounds.push_back(std::move(round));
  }
  return c;
}

}  // namespace gauntlet::service
