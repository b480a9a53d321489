#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gauntlet/core/model.hpp"
#include "gauntlet/core/rng.hpp"
#include "gauntlet/tiles/pool.hpp"

namespace gauntlet::tiles {

struct RepetitionTarget {
  std::size_t total_draws = 48'330;
  std::size_t clusters = 1'985;
  std::size_t redundant = 9'854;
};

/// One step of a planned corpus: the first draw of an image is fresh, later
/// draws of the same image are copies.
struct PlannedDraw {
  std::uint64_t image = 0;
  CategoryId category{};
  bool fresh = true;
};

/// Draw schedule with exactly `clusters` repeated images and `redundant`
/// extra copies, in shuffled order. Throws ConfigError if infeasible.
std::vector<PlannedDraw> plan_repetition(const RepetitionTarget& target, std::size_t category_count, Rng& rng);

/// Runs a plan through the pool, handing each draw to `sink` in plan order.
void execute_plan(TilePool& pool, const std::vector<PlannedDraw>& plan,
                  const std::function<void(const PoolDraw&)>& sink);

}  // namespace gauntlet::tiles
