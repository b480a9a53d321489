#include "gauntlet/tiles/plan.hpp"

#include <numeric>
#include <unordered_map>

#include "gauntlet/core/error.hpp"

namespace gauntlet::tiles {

namespace {
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.below(i)]);
  }
}
}  // namespace

std::vector<PlannedDraw> plan_repetition(const RepetitionTarget& target, std::size_t category_count, Rng& rng) {
  if (category_count == 0) throw ConfigError("plan needs at least one category");
  if (target.redundant > target.total_draws) throw ConfigError("more redundant images than draws");
  const std::size_t distinct = target.total_draws - target.redundant;
  if (target.clusters > distinct) throw ConfigError("more clusters than distinct images");
  if (target.clusters > target.redundant) throw ConfigError("every cluster needs at least one extra copy");
  if (target.redundant > 0 && target.clusters == 0) throw ConfigError("redundant copies need a cluster");

  std::vector<std::size_t> extras(target.clusters, 1);
  for (std::size_t i = target.clusters; i < target.redundant; ++i) ++extras[rng.below(target.clusters)];

  std::vector<std::uint64_t> images(distinct);
  std::iota(images.begin(), images.end(), 0);
  shuffle(images, rng);

  std::vector<std::uint64_t> order(images.begin(), images.end());
  order.reserve(target.total_draws);
  for (std::size_t c = 0; c < target.clusters; ++c) order.insert(order.end(), extras[c], images[c]);
  shuffle(order, rng);

  std::vector<CategoryId> category(distinct);
  for (auto& c : category) c = category_at(rng.below(category_count));

  std::vector<bool> seen(distinct, false);
  std::vector<PlannedDraw> plan;
  plan.reserve(order.size());
  for (auto image : order) {
    plan.push_back({image, category[image], !seen[image]});
    seen[image] = true;
  }
  return plan;
}

void execute_plan(TilePool& pool, const std::vector<PlannedDraw>& plan,
                  const std::function<void(const PoolDraw&)>& sink) {
  std::unordered_map<std::uint64_t, std::uint64_t> slot_of_image;
  for (const auto& step : plan) {
    if (step.fresh) {
      const auto d = pool.draw_fresh(step.category);
      slot_of_image[step.image] = d.slot;
      sink(d);
    } else {
      sink(pool.draw_copy(slot_of_image.at(step.image)));
    }
  }
}

}  // namespace gauntlet::tiles
