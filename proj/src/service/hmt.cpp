#include "gauntlet/service/hmt.hpp"

#include <cstdio>

#include "gauntlet/core/error.hpp"

namespace gauntlet::service {

std::string format_hmt(Pico amount) {
  const bool negative = amount < 0;
  const auto mag = static_cast<std::uint64_t>(negative ? -amount : amount);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%llu.%012llu", negative ? "-" : "",
                static_cast<unsigned long long>(mag / kPicoPerHmt), static_cast<unsigned long long>(mag % kPicoPerHmt));
  return buf;
}

double to_hmt(Pico amount) { return static_cast<double>(amount) / static_cast<double>(kPicoPerHmt); }

HmtLedger::HmtLedger(Pico per_solve_rate, bool flagged_sessions_earn)
    : rate_(per_solve_rate), flagged_earn_(flagged_sessions_earn) {
  if (rate_ < 0) throw ConfigError("HMT rate must be non-negative");
}

bool HmtLedger::credit(bool pass, bool flagged) {
  if (!pass) return false;
  ++solves_;
  if (flagged && !flagged_earn_) return false;
  balance_ += rate_;
  ++credited_;
  return true;
}

}  // namespace gauntlet::service
