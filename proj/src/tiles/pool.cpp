#include "gauntlet/tiles/pool.hpp"

#include <memory>

#include "gauntlet/core/error.hpp"

namespace gauntlet::tiles {

TilePool::TilePool(SynthSpec spec, std::size_t category_count, double reuse_probability, Rng rng)
    : spec_(std::move(spec)), reuse_probability_(reuse_probability), rng_(rng), slots_by_category_(category_count) {
  if (!(reuse_probability >= 0.0 && reuse_probability <= 1.0)) throw ConfigError("reuse probability outside [0, 1]");
  if (spec_.patterns.size() < category_count) throw ConfigError("synth spec does not cover every category");
  spec_.validate();
}

PoolDraw TilePool::draw(CategoryId category) {
  const auto& candidates = slots_by_category_.at(index_of(category));
  if (candidates.empty()) {
    if (reuse_probability_ >= 1.0) throw ConfigError("forced reuse with no slot for category");
    return draw_fresh(category);
  }
  if (rng_.bernoulli(reuse_probability_)) {
    return draw_copy(candidates[rng_.below(candidates.size())]);
  }
  return draw_fresh(category);
}

PoolDraw TilePool::draw_fresh(CategoryId category) {
  if (index_of(category) >= slots_by_category_.size()) throw ConfigError("category outside pool");
  const std::uint64_t slot = slots_.size();
  slots_.push_back({category, rng_.next_u64(), 0});
  slots_by_category_[index_of(category)].push_back(slot);
  return record(slot, false);
}

PoolDraw TilePool::draw_copy(std::uint64_t slot) {
  if (slot >= slots_.size()) throw ConfigError("no such pool slot");
  return record(slot, true);
}

PoolDraw TilePool::record(std::uint64_t slot, bool reused) {
  auto& s = slots_[slot];
  ++s.draws;
  draw_log_.push_back({draw_log_.size(), slot, reused});
  return {slot, reused, s.category, render_ ? bitmap_of(slot) : nullptr};
}

Bitmap TilePool::bitmap_of(std::uint64_t slot) const {
  const auto& s = slots_.at(slot);
  return std::make_shared<const GrayImage>(synth_tile(s.category, s.instance_seed, spec_));
}

std::vector<std::vector<std::uint64_t>> TilePool::reuse_clusters() const {
  std::vector<std::vector<std::uint64_t>> by_slot(slots_.size());
  for (const auto& d : draw_log_) by_slot[d.slot].push_back(d.draw_index);
  std::vector<std::vector<std::uint64_t>> clusters;
  for (auto& draws : by_slot) {
    if (draws.size() >= 2) clusters.push_back(std::move(draws));
  }
  return clusters;
}

}  // namespace gauntlet::tiles
