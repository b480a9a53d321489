#include "gauntlet/tiles/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>

#include "gauntlet/core/error.hpp"
#include "gauntlet/core/rng.hpp"

namespace gauntlet::tiles {

namespace {

constexpr int kPeriod = kTileSize;
static_assert((kPeriod & (kPeriod - 1)) == 0, "phase index wraps with a mask");

struct UnitCircle {
  std::array<double, kPeriod> sin{};
  std::array<double, kPeriod> cos{};
};

const UnitCircle& unit_circle() {
  static const UnitCircle kTable = [] {
    UnitCircle t;
    for (int j = 0; j < kPeriod; ++j) {
      t.sin[j] = std::sin(2.0 * std::numbers::pi * j / kPeriod);
      t.cos[j] = std::cos(2.0 * std::numbers::pi * j / kPeriod);
    }
    return t;
  }();
  return kTable;
}

// Adds amp * sin(2*pi*(kx*x + ky*y)/64 + phase) to the accumulator, split
// as sin(ax + phase)cos(by) + cos(ax + phase)sin(by) so rows vectorize.
void add_wave(std::vector<float>& acc, int kx, int ky, double amp, double phase) {
  const auto& unit = unit_circle();
  const double s = std::sin(phase);
  const double c = std::cos(phase);
  std::array<float, kPeriod> row_sin{};
  std::array<float, kPeriod> row_cos{};
  for (int x = 0; x < kTileSize; ++x) {
    const auto j = static_cast<unsigned>(kx * x) & (kPeriod - 1);
    row_sin[x] = static_cast<float>(amp * (unit.sin[j] * c + unit.cos[j] * s));
    row_cos[x] = static_cast<float>(amp * (unit.cos[j] * c - unit.sin[j] * s));
  }
  float* out = acc.data();
  for (int y = 0; y < kTileSize; ++y, out += kTileSize) {
    const auto j = static_cast<unsigned>(ky * y) & (kPeriod - 1);
    const auto cy = static_cast<float>(unit.cos[j]);
    const auto sy = static_cast<float>(unit.sin[j]);
    for (int x = 0; x < kTileSize; ++x) out[x] += row_sin[x] * cy + row_cos[x] * sy;
  }
}

bool is_background(int kx, int ky) { return std::abs(kx) <= 3 && std::abs(ky) <= 3; }

}  // namespace

double GratingPattern::frequency() const { return std::hypot(kx, ky); }
double GratingPattern::orientation() const { return std::atan2(ky, kx); }

SynthSpec SynthSpec::defaults(std::size_t category_count) {
  static const std::vector<std::pair<int, int>> kVectors = {
      {8, 0}, {0, 8}, {6, 6}, {6, -6}, {12, 0}, {0, 12}, {9, 9}, {9, -9}, {4, 10}, {10, 4}, {4, -10}, {10, -4}};
  if (category_count > kVectors.size()) throw ConfigError("no default texture for that many categories");
  SynthSpec spec;
  for (std::size_t i = 0; i < category_count; ++i) {
    spec.patterns.push_back({kVectors[i].first, kVectors[i].second, 40.0});
  }
  return spec;
}

void SynthSpec::validate() const {
  if (patterns.empty()) throw ConfigError("synth spec has no patterns");
  if (background_ratio < 0.0 || noise_ratio < 0.0) throw ConfigError("synth ratios must be non-negative");
  std::set<std::pair<int, int>> seen;
  for (const auto& p : patterns) {
    if (p.amplitude < 0.0) throw ConfigError("grating amplitude must be non-negative");
    if (is_background(p.kx, p.ky)) throw ConfigError("grating overlaps the background band");
    // (kx, ky) and (-kx, -ky) describe the same grating.
    if (!seen.insert({p.kx, p.ky}).second || seen.count({-p.kx, -p.ky}) != 0) {
      throw ConfigError("categories must have distinct wave vectors");
    }
  }
}

const std::vector<std::pair<int, int>>& background_wave_vectors() {
  static const std::vector<std::pair<int, int>> kVectors = [] {
    std::vector<std::pair<int, int>> v;
    for (int ky = 1; ky <= 3; ++ky) v.emplace_back(0, ky);
    for (int kx = 1; kx <= 3; ++kx) {
      for (int ky = -3; ky <= 3; ++ky) v.emplace_back(kx, ky);
    }
    return v;
  }();
  return kVectors;
}

GrayImage synth_tile(CategoryId category, std::uint64_t instance_seed, const SynthSpec& spec) {
  const std::size_t index = index_of(category);
  if (index >= spec.patterns.size()) throw ConfigError("category not in synth spec");
  const GratingPattern& pattern = spec.patterns[index];
  Rng rng(mix_seed(instance_seed, index));

  std::vector<float> acc(static_cast<std::size_t>(kTileSize) * kTileSize, 128.0f);
  const double two_pi = 2.0 * std::numbers::pi;
  add_wave(acc, pattern.kx, pattern.ky, pattern.amplitude, two_pi * rng.uniform());
  for (const auto& [kx, ky] : background_wave_vectors()) {
    const double amp = pattern.amplitude * spec.background_ratio * rng.uniform();
    add_wave(acc, kx, ky, amp, two_pi * rng.uniform());
  }
  // Pixel noise from a SplitMix64 sequence keyed off the tile stream.
  const float noise = static_cast<float>(pattern.amplitude * spec.noise_ratio);
  std::uint64_t state = rng.next_u64();
  GrayImage image(kTileSize, kTileSize);
  auto& px = image.pixels();
  for (std::size_t i = 0; i < acc.size(); ++i) {
    state = mix_seed(state, 0);
    const float u = static_cast<float>(state >> 40) * 0x1.0p-24f;
    const float v = std::clamp(acc[i] + noise * (2.0f * u - 1.0f), 0.0f, 255.0f);
    px[i] = static_cast<std::uint8_t>(v + 0.5f);
  }
  return image;
}

}  // namespace gauntlet::tiles
