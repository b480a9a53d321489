#pragma once

#include <array>
#include <deque>

#include "gauntlet/core/clock.hpp"
#include "gauntlet/core/profile.hpp"

namespace gauntlet::service {

struct RateLimitConfig {
  Millis min_submit_gap{1000};  // per session, between answer submissions
  int concurrency_cap = 25;     // open sessions at once
  Millis ip_window{60000};
  int ip_max_requests = 600;    // per ip_tag within the window
  friend bool operator==(const RateLimitConfig&, const RateLimitConfig&) = default;
  /// Throws ConfigError on non-positive limits or a negative gap.
  void validate() const;
};

/// Sliding-window request counter per ip tag. `admit` records the request
/// only when it is admitted, so a refusal leaves the window unchanged.
class IpWindow {
 public:
  explicit IpWindow(RateLimitConfig config) : config_(config) {}

  [[nodiscard]] bool would_admit(IpTag tag, Millis now) const;
  /// Returns false, without recording, when the window is full.
  bool admit(IpTag tag, Millis now);
  [[nodiscard]] std::size_t count(IpTag tag, Millis now) const;
  /// Stored entries per tag, for state snapshots.
  [[nodiscard]] std::array<std::size_t, 4> sizes() const;

 private:
  RateLimitConfig config_;
  std::array<std::deque<Millis>, 4> requests_;
};

/// True iff a submission at `now` respects the gap after `last`.
inline bool submit_gap_ok(const RateLimitConfig& config, Millis last, Millis now) {
  return now - last >= config.min_submit_gap;
}

}  // namespace gauntlet::service
