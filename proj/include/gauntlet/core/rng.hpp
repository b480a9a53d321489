#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace gauntlet {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// FNV-1a over a stream name.
std::uint64_t name_hash(std::string_view name);

/// Seedable pseudo-random stream.
///
/// Distributions are computed from raw 64-bit draws here rather than through
/// <random> distributions, whose output is implementation-defined, so that a
/// seed reproduces the same values on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Named stream derived from a root seed ("challenge", "grade", ...).
  static Rng stream(std::uint64_t root_seed, std::string_view name);

  /// Child stream keyed on this stream's construction seed, not its state:
  /// fork(i) is the same no matter how many values were drawn before.
  [[nodiscard]] Rng fork(std::uint64_t index) const;

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform();
  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p);
  /// Index drawn proportionally to non-negative weights (sum > 0).
  std::size_t weighted(std::span<const double> weights);

  [[nodiscard]] std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace gauntlet
