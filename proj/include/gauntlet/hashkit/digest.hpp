#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "gauntlet/core/image.hpp"

namespace gauntlet::hashkit {

struct Digest128 {
  std::array<std::uint8_t, 16> bytes{};

  [[nodiscard]] std::string hex() const;
  friend auto operator<=>(const Digest128&, const Digest128&) = default;
};

struct Digest128Hash {
  std::size_t operator()(const Digest128& d) const noexcept;
};

/// MD5 of raw bytes.
Digest128 md5(std::string_view bytes);

/// MD5 of the bitmap's PGM encoding (equals the digest of its .pgm file).
Digest128 exact_hash(const GrayImage& image);

}  // namespace gauntlet::hashkit
