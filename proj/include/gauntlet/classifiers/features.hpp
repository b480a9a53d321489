#pragma once

#include <vector>

#include "gauntlet/core/image.hpp"
#include "gauntlet/core/model.hpp"
#include "gauntlet/tiles/synth.hpp"

namespace gauntlet::classifiers {

/// Phase-invariant matched filter over the per-category gratings: projects
/// the tile on sin/cos of each category's wave vector and returns the class
/// with the largest energy.
class MatchedFilter {
 public:
  explicit MatchedFilter(const tiles::SynthSpec& spec);

  [[nodiscard]] CategoryId detect(const GrayImage& bitmap) const;
  [[nodiscard]] std::vector<double> energies(const GrayImage& bitmap) const;
  [[nodiscard]] std::size_t size() const { return sin_basis_.size(); }

 private:
  std::vector<std::vector<float>> sin_basis_;
  std::vector<std::vector<float>> cos_basis_;
};

}  // namespace gauntlet::classifiers
