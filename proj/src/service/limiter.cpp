#include "gauntlet/service/limiter.hpp"

#include <algorithm>

#include "gauntlet/core/error.hpp"

namespace gauntlet::service {

void RateLimitConfig::validate() const {
  if (min_submit_gap.count() < 0) throw ConfigError("min_submit_gap must be >= 0");
  if (concurrency_cap <= 0) throw ConfigError("concurrency_cap must be > 0");
  if (ip_window.count() <= 0) throw ConfigError("ip_window must be > 0");
  if (ip_max_requests <= 0) throw ConfigError("ip_max_requests must be > 0");
}

std::size_t IpWindow::count(IpTag tag, Millis now) const {
  const auto& q = requests_[static_cast<std::size_t>(tag)];
  // Entries are appended in admission order, which need not be time order
  // under wall-clock concurrency, so count rather than binary search.
  return static_cast<std::size_t>(
      std::ranges::count_if(q, [&](Millis t) { return now - t < config_.ip_window; }));
}

bool IpWindow::would_admit(IpTag tag, Millis now) const {
  return count(tag, now) < static_cast<std::size_t>(config_.ip_max_requests);
}

bool IpWindow::admit(IpTag tag, Millis now) {
  if (!would_admit(tag, now)) return false;
  auto& q = requests_[static_cast<std::size_t>(tag)];
  // Expired entries carry no information; dropping them is not observable.
  while (!q.empty() && now - q.front() >= config_.ip_window) q.pop_front();
  q.push_back(now);
  return true;
}

std::array<std::size_t, 4> IpWindow::sizes() const {
  std::array<std::size_t, 4> out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = requests_[i].size();
  return out;
}

}  // namespace gauntlet::service
