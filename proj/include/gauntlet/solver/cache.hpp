#pragma once

#include <atomic>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

#include "gauntlet/classifiers/labeler.hpp"
#include "gauntlet/hashkit/phash.hpp"

namespace gauntlet::solver {

/// Perceptual-hash keyed label cache shared by concurrent sessions.
///
/// A lookup hits when some stored hash is within `tau` bits. Writes are
/// last-writer-wins. hits() + misses() == number of lookups.
class DedupCache {
 public:
  /// Throws ConfigError unless 0 <= tau <= 64.
  explicit DedupCache(int tau = 0);

  std::optional<classifiers::CategoryMask> lookup(const hashkit::PHash64& hash);
  /// Called only after a backend classification.
  void store(const hashkit::PHash64& hash, classifiers::CategoryMask labels);

  [[nodiscard]] std::uint64_t hits() const { return hits_.load(); }
  [[nodiscard]] std::uint64_t misses() const { return misses_.load(); }
  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] int tau() const { return tau_; }

 private:
  int tau_;
  mutable std::shared_mutex mu_;
  std::unordered_map<std::uint64_t, classifiers::CategoryMask> entries_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};
};

}  // namespace gauntlet::solver
