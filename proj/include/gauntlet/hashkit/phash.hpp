#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>

#include "gauntlet/core/image.hpp"

namespace gauntlet::hashkit {

struct PHash64 {
  std::uint64_t bits = 0;
  friend auto operator<=>(const PHash64&, const PHash64&) = default;
};

/// Area-average (box filter) resampling to width x height. Source pixels
/// straddling an output cell contribute by their overlap fraction.
std::vector<double> box_downscale(const GrayImage& image, int width, int height);

/// Orthonormal 2-D DCT-II of a 32x32 block, top-left 8x8 coefficients, row-major.
std::array<double, 64> low_frequency_dct(const std::vector<double>& block32);

/// DCT perceptual hash.
///
/// Downscale to 32x32, take the top-left 8x8 DCT-II block (DC included),
/// and set bit i (i = 8*row + col, least significant first) when coefficient
/// i is strictly greater than the median of the 64. Throws FormatError for
/// images smaller than 32x32.
PHash64 phash64(const GrayImage& image);

inline int hamming(PHash64 a, PHash64 b) { return std::popcount(a.bits ^ b.bits); }

}  // namespace gauntlet::hashkit
