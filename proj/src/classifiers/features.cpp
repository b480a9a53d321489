#include "gauntlet/classifiers/features.hpp"

#include <cmath>
#include <numbers>

#include "gauntlet/core/error.hpp"

namespace gauntlet::classifiers {

MatchedFilter::MatchedFilter(const tiles::SynthSpec& spec) {
  spec.validate();
  constexpr std::size_t kPixels = static_cast<std::size_t>(kTileSize) * kTileSize;
  for (const auto& p : spec.patterns) {
    std::vector<float> s(kPixels);
    std::vector<float> c(kPixels);
    for (int y = 0; y < kTileSize; ++y) {
      for (int x = 0; x < kTileSize; ++x) {
        const double theta = 2.0 * std::numbers::pi * (p.kx * x + p.ky * y) / kTileSize;
        s[static_cast<std::size_t>(y) * kTileSize + x] = static_cast<float>(std::sin(theta));
        c[static_cast<std::size_t>(y) * kTileSize + x] = static_cast<float>(std::cos(theta));
      }
    }
    sin_basis_.push_back(std::move(s));
    cos_basis_.push_back(std::move(c));
  }
}

std::vector<double> MatchedFilter::energies(const GrayImage& bitmap) const {
  if (bitmap.width() != kTileSize || bitmap.height() != kTileSize) throw FormatError("tiles must be 64x64");
  const auto& px = bitmap.pixels();
  std::vector<double> out(sin_basis_.size());
  for (std::size_t k = 0; k < sin_basis_.size(); ++k) {
    float a = 0.0f;
    float b = 0.0f;
    const float* s = sin_basis_[k].data();
    const float* c = cos_basis_[k].data();
    for (std::size_t i = 0; i < px.size(); ++i) {
      a += s[i] * px[i];
      b += c[i] * px[i];
    }
    out[k] = static_cast<double>(a) * a + static_cast<double>(b) * b;
  }
  return out;
}

CategoryId MatchedFilter::detect(const GrayImage& bitmap) const {
  const auto e = energies(bitmap);
  std::size_t best = 0;
  for (std::size_t k = 1; k < e.size(); ++k) {
    if (e[k] > e[best]) best = k;
  }
  return category_at(best);
}

}  // namespace gauntlet::classifiers
