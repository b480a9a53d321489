#pragma once

#include <cstdint>
#include <string>

namespace gauntlet::service {

/// HMT amounts in units of 1e-12 HMT, so balances add exactly.
using Pico = std::int64_t;
inline constexpr Pico kPicoPerHmt = 1'000'000'000'000;

/// 0.0717 HMT over 259 solves, rounded to the nearest pico.
inline constexpr Pico kDefaultSolveRate = (71'700'000'000 * 2 + 259) / (2 * 259);

/// Decimal rendering with twelve fractional digits.
std::string format_hmt(Pico amount);
double to_hmt(Pico amount);

/// Per-site credit for solved challenges.
class HmtLedger {
 public:
  /// Throws ConfigError on a negative rate.
  explicit HmtLedger(Pico per_solve_rate = kDefaultSolveRate, bool flagged_sessions_earn = true);

  /// Credits one rate unit on pass unless the session is flagged and flagged
  /// sessions do not earn. Returns whether anything was credited.
  bool credit(bool pass, bool flagged);

  [[nodiscard]] Pico balance() const { return balance_; }
  [[nodiscard]] std::uint64_t solves() const { return solves_; }
  [[nodiscard]] std::uint64_t credited() const { return credited_; }
  [[nodiscard]] Pico per_solve_rate() const { return rate_; }
  [[nodiscard]] bool flagged_sessions_earn() const { return flagged_earn_; }

 private:
  Pico rate_;
  bool flagged_earn_;
  Pico balance_ = 0;
  std::uint64_t solves_ = 0;    // passes, credited or not
  std::uint64_t credited_ = 0;  // passes that earned
};

}  // namespace gauntlet::service
