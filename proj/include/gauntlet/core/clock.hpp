#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>

namespace gauntlet {

/// Timestamps and durations are milliseconds on a monotonic time line.
using Millis = std::chrono::milliseconds;

class Clock {
 public:
  virtual ~Clock() = default;
  [[nodiscard]] virtual Millis now() const = 0;
};

/// Logical clock; time only moves when the owner says so.
class SimClock final : public Clock {
 public:
  explicit SimClock(Millis start = Millis{0}) : now_(start.count()) {}
  [[nodiscard]] Millis now() const override { return Millis{now_.load()}; }
  void set(Millis t) { now_.store(t.count()); }
  void advance(Millis d) { now_.fetch_add(d.count()); }

 private:
  std::atomic<std::int64_t> now_;
};

/// Wall-clock time since construction, from std::chrono::steady_clock.
class SteadyClock final : public Clock {
 public:
  SteadyClock() : origin_(std::chrono::steady_clock::now()) {}
  [[nodiscard]] Millis now() const override {
    return std::chrono::duration_cast<Millis>(std::chrono::steady_clock::now() - origin_);
  }

 private:
  std::chrono::steady_clock::time_point origin_;
};

}  // namespace gauntlet
