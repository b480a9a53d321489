#pragma once

#include <cstdint>
#include <string_view>

#include "gauntlet/core/image.hpp"
#include "gauntlet/core/model.hpp"
#include "gauntlet/core/rng.hpp"

namespace gauntlet::classifiers {

/// Set of categories a tile was judged to show.
struct CategoryMask {
  std::uint32_t bits = 0;

  static CategoryMask of(CategoryId id) { return {std::uint32_t{1} << index_of(id)}; }
  [[nodiscard]] bool contains(CategoryId id) const { return (bits >> index_of(id)) & 1U; }
  [[nodiscard]] bool empty() const { return bits == 0; }
  void add(CategoryId id) { bits |= std::uint32_t{1} << index_of(id); }
  friend bool operator==(const CategoryMask&, const CategoryMask&) = default;
};

/// What the solver asks of a classification backend. Implementations are
/// immutable; randomness comes from the caller's stream.
class Labeler {
 public:
  virtual ~Labeler() = default;
  [[nodiscard]] virtual CategoryMask label(const GrayImage& bitmap, Rng& rng) const = 0;
  [[nodiscard]] virtual std::string_view name() const = 0;
};

}  // namespace gauntlet::classifiers
