#include "gauntlet/solver/cache.hpp"

#include <mutex>

#include "gauntlet/core/error.hpp"

namespace gauntlet::solver {

DedupCache::DedupCache(int tau) : tau_(tau) {
  if (tau < 0 || tau > 64) throw ConfigError("cache tau must be in [0, 64]");
}

std::optional<classifiers::CategoryMask> DedupCache::lookup(const hashkit::PHash64& hash) {
  std::optional<classifiers::CategoryMask> found;
  {
    std::shared_lock lock(mu_);
    if (const auto it = entries_.find(hash.bits); it != entries_.end()) {
      found = it->second;
    } else if (tau_ > 0) {
      // Nearest stored hash, ties broken by hash value so iteration order
      // of the map never matters.
      int best = tau_ + 1;
      std::uint64_t best_key = 0;
      for (const auto& [key, mask] : entries_) {
        const int d = hashkit::hamming(hash, hashkit::PHash64{key});
        if (d < best || (d == best && key < best_key)) {
          best = d;
          best_key = key;
          found = mask;
        }
      }
    }
  }
  (found ? hits_ : misses_).fetch_add(1);
  return found;
}

void DedupCache::store(const hashkit::PHash64& hash, classifiers::CategoryMask labels) {
  std::unique_lock lock(mu_);
  entries_[hash.bits] = labels;
}

std::size_t DedupCache::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

}  // namespace gauntlet::solver
