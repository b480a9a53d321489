#pragma once

#include <cstdint>
#include <vector>

#include "gauntlet/core/image.hpp"
#include "gauntlet/core/model.hpp"
#include "gauntlet/core/rng.hpp"
#include "gauntlet/tiles/synth.hpp"

namespace gauntlet::tiles {

struct PoolSlot {
  CategoryId category{};
  std::uint64_t instance_seed = 0;
  std::uint64_t draws = 0;
};

struct DrawRecord {
  std::uint64_t draw_index = 0;
  std::uint64_t slot = 0;
  bool reused = false;
};

struct PoolDraw {
  std::uint64_t slot = 0;
  bool reused = false;
  CategoryId category{};
  Bitmap bitmap;
};

/// Open-ended image pool that hands out exact copies of earlier images.
///
/// With probability `reuse_probability` a draw returns a bit-exact copy of a
/// uniformly chosen existing slot of the requested category; otherwise a
/// fresh slot is synthesized and appended. Slots keep only their seed; the
/// bitmap is re-synthesized on demand. Not thread-safe.
class TilePool {
 public:
  TilePool(SynthSpec spec, std::size_t category_count, double reuse_probability, Rng rng);

  /// Throws ConfigError when reuse is forced (r == 1) and no slot exists.
  PoolDraw draw(CategoryId category);
  PoolDraw draw_fresh(CategoryId category);
  PoolDraw draw_copy(std::uint64_t slot);

  [[nodiscard]] Bitmap bitmap_of(std::uint64_t slot) const;
  /// With rendering off, draws carry a null bitmap; the random stream and
  /// draw log are unaffected. For grading-only experiments.
  void set_rendering(bool on) { render_ = on; }
  [[nodiscard]] const std::vector<PoolSlot>& slots() const { return slots_; }
  [[nodiscard]] const std::vector<DrawRecord>& draw_log() const { return draw_log_; }
  [[nodiscard]] double reuse_probability() const { return reuse_probability_; }
  [[nodiscard]] const SynthSpec& spec() const { return spec_; }

  /// Slot ids drawn at least twice, each with the draw indices that produced it.
  [[nodiscard]] std::vector<std::vector<std::uint64_t>> reuse_clusters() const;

 private:
  PoolDraw record(std::uint64_t slot, bool reused);

  SynthSpec spec_;
  double reuse_probability_;
  bool render_ = true;
  Rng rng_;
  std::vector<PoolSlot> slots_;
  std::vector<std::vector<std::uint64_t>> slots_by_category_;
  std::vector<DrawRecord> draw_log_;
};

}  // namespace gauntlet::tiles
