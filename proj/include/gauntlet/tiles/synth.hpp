#pragma once

#include <cstdint>
#include <vector>

#include "gauntlet/core/image.hpp"
#include "gauntlet/core/model.hpp"

namespace gauntlet::tiles {

/// A periodic grating on the 64x64 torus: kx and ky are whole cycles per tile
/// along each axis, so distinct wave vectors are exactly orthogonal.
struct GratingPattern {
  int kx = 0;
  int ky = 0;
  double amplitude = 40.0;

  [[nodiscard]] double frequency() const;    // cycles per tile
  [[nodiscard]] double orientation() const;  // radians
  friend bool operator==(const GratingPattern&, const GratingPattern&) = default;
};

/// Per-category texture parameters.
///
/// A tile is mid-gray plus its category grating, a seeded low-frequency
/// background (wave vectors with |kx|,|ky| <= 3, disjoint from every
/// category vector) and seeded per-pixel noise. Background and noise scale
/// with the grating amplitude, so amplitude 0 gives a constant tile.
struct SynthSpec {
  std::vector<GratingPattern> patterns;  // indexed by CategoryId
  double background_ratio = 0.25;        // max amplitude of each background component
  double noise_ratio = 0.2;              // half-width of uniform pixel noise

  static SynthSpec defaults(std::size_t category_count);
  /// Throws ConfigError on duplicate or background-overlapping wave vectors.
  void validate() const;
};

/// Deterministic in (category, instance_seed, spec).
GrayImage synth_tile(CategoryId category, std::uint64_t instance_seed, const SynthSpec& spec);

/// Background wave vectors (half plane, low frequency).
const std::vector<std::pair<int, int>>& background_wave_vectors();

}  // namespace gauntlet::tiles
