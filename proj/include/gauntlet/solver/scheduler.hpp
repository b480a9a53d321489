#pragma once

#include <functional>
#include <optional>
#include <queue>
#include <vector>

#include "gauntlet/core/clock.hpp"

namespace gauntlet::solver {

/// Discrete-event loop on a logical clock. Each task runs at its wake time
/// and returns its next wake time, or nullopt when finished. Equal wake
/// times run in scheduling order, so interleavings are reproducible.
class EventScheduler {
 public:
  using Task = std::function<std::optional<Millis>(Millis now)>;

  void at(Millis when, Task task);
  /// Runs until no task remains. The clock only moves forward.
  void run(SimClock& clock);
  [[nodiscard]] bool empty() const { return queue_.empty(); }

 private:
  struct Entry {
    Millis when;
    std::uint64_t seq;
    std::size_t task;
    bool operator>(const Entry& o) const { return when != o.when ? when > o.when : seq > o.seq; }
  };
  std::vector<Task> tasks_;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue_;
  std::uint64_t seq_ = 0;
};

}  // namespace gauntlet::solver
