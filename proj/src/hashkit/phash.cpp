#include "gauntlet/hashkit/phash.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "gauntlet/core/error.hpp"

namespace gauntlet::hashkit {

namespace {

constexpr int kBlock = 32;
constexpr int kKeep = 8;

// Weights mapping `in` source samples onto `out` cells of equal width.
// Each entry is (source index, weight); weights of a cell sum to 1.
std::vector<std::vector<std::pair<int, double>>> box_weights(int in, int out) {
  std::vector<std::vector<std::pair<int, double>>> w(out);
  const double scale = static_cast<double>(in) / out;
  for (int o = 0; o < out; ++o) {
    const double lo = o * scale;
    const double hi = (o + 1) * scale;
    for (int s = static_cast<int>(std::floor(lo)); s < in && s < hi; ++s) {
      const double overlap = std::min<double>(hi, s + 1) - std::max<double>(lo, s);
      if (overlap > 0.0) w[o].emplace_back(s, overlap / scale);
    }
  }
  return w;
}

const std::array<std::array<double, kBlock>, kKeep>& dct_rows() {
  static const auto kRows = [] {
    std::array<std::array<double, kBlock>, kKeep> m{};
    for (int k = 0; k < kKeep; ++k) {
      const double c = k == 0 ? std::sqrt(1.0 / kBlock) : std::sqrt(2.0 / kBlock);
      for (int n = 0; n < kBlock; ++n) {
        m[k][n] = c * std::cos(std::numbers::pi / kBlock * (n + 0.5) * k);
      }
    }
    return m;
  }();
  return kRows;
}

}  // namespace

std::vector<double> box_downscale(const GrayImage& image, int width, int height) {
  if (image.width() < width || image.height() < height) throw FormatError("image smaller than target size");
  const auto wx = box_weights(image.width(), width);
  const auto wy = box_weights(image.height(), height);
  // Horizontal pass, then vertical.
  std::vector<double> rows(static_cast<std::size_t>(image.height()) * width, 0.0);
  for (int y = 0; y < image.height(); ++y) {
    for (int ox = 0; ox < width; ++ox) {
      double acc = 0.0;
      for (auto [sx, w] : wx[ox]) acc += w * image.at(sx, y);
      rows[static_cast<std::size_t>(y) * width + ox] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(width) * height, 0.0);
  for (int oy = 0; oy < height; ++oy) {
    for (int ox = 0; ox < width; ++ox) {
      double acc = 0.0;
      for (auto [sy, w] : wy[oy]) acc += w * rows[static_cast<std::size_t>(sy) * width + ox];
      out[static_cast<std::size_t>(oy) * width + ox] = acc;
    }
  }
  return out;
}

std::array<double, 64> low_frequency_dct(const std::vector<double>& block) {
  const auto& c = dct_rows();
  // tmp = C * X restricted to the first 8 rows of C.
  std::array<std::array<double, kBlock>, kKeep> tmp{};
  for (int u = 0; u < kKeep; ++u) {
    for (int x = 0; x < kBlock; ++x) {
      double acc = 0.0;
      for (int y = 0; y < kBlock; ++y) acc += c[u][y] * block[static_cast<std::size_t>(y) * kBlock + x];
      tmp[u][x] = acc;
    }
  }
  std::array<double, 64> out{};
  for (int u = 0; u < kKeep; ++u) {
    for (int v = 0; v < kKeep; ++v) {
      double acc = 0.0;
      for (int x = 0; x < kBlock; ++x) acc += tmp[u][x] * c[v][x];
      out[static_cast<std::size_t>(u) * kKeep + v] = acc;
    }
  }
  return out;
}

PHash64 phash64(const GrayImage& image) {
  if (image.width() < kBlock || image.height() < kBlock) throw FormatError("pHash needs at least 32x32 pixels");
  auto coeffs = low_frequency_dct(box_downscale(image, kBlock, kBlock));
  // Rounding leaves ~1e-13 residue where the exact coefficient is zero (flat
  // regions, constant images); snapping it keeps those bits well defined.
  // Genuine coefficients of 8-bit input are practically never this small.
  for (auto& c : coeffs) {
    if (std::abs(c) < 1e-9) c = 0.0;
  }
  auto sorted = coeffs;
  std::sort(sorted.begin(), sorted.end());
  const double median = 0.5 * (sorted[31] + sorted[32]);
  PHash64 h;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] > median) h.bits |= std::uint64_t{1} << i;
  }
  return h;
}

}  // namespace gauntlet::hashkit
