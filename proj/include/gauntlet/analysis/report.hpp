#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gauntlet/solver/records.hpp"

namespace gauntlet::analysis {

struct CategoryStat {
  std::string name;
  std::uint64_t attempted = 0;
  std::uint64_t passed = 0;
  double frequency = 0.0;  // attempted / total attempted
  double accuracy = 0.0;   // passed / attempted
};

/// (value_ms, cumulative fraction) pairs, one per distinct value.
using CdfSeries = std::vector<std::pair<std::int64_t, double>>;
CdfSeries cdf(std::vector<std::int64_t> values);

/// Aggregate of a set of session records. "attempted" counts graded
/// sessions (pass or fail); blocked and errored sessions are separate.
/// Timing statistics cover attempted sessions only.
struct CampaignReport {
  std::uint64_t sessions = 0;
  std::uint64_t attempted = 0;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::uint64_t blocked = 0;
  std::uint64_t errors = 0;
  std::uint64_t verified = 0;
  double accuracy = 0.0;         // passed / attempted
  double accuracy_percent = 0.0;  // rounded to two decimals
  std::vector<CategoryStat> per_category;  // by name
  std::map<int, std::uint64_t> selections_per_round;      // attempted rounds only
  std::map<int, std::uint64_t> selections_per_challenge;  // attempted sessions only
  std::uint64_t rounds = 0;
  std::uint64_t backend_calls = 0;
  std::uint64_t cache_hits = 0;
  double mean_acquire_ms = 0.0;
  double mean_solve_ms = 0.0;
  double mean_submit_verify_ms = 0.0;
  double mean_total_ms = 0.0;
  CdfSeries cdf_acquire;
  CdfSeries cdf_solve;
  CdfSeries cdf_submit_verify;
  CdfSeries cdf_total;
  std::map<std::string, std::uint64_t> blocked_messages;
  nlohmann::json ledger;  // service ledger snapshot as returned by the API
};

/// `ledger` may be null when no snapshot is available.
CampaignReport aggregate_campaign(const std::vector<solver::SessionRecord>& records,
                                  const nlohmann::json& ledger = nullptr);

/// Percentage rounded half away from zero to two decimals.
double percent(std::uint64_t part, std::uint64_t whole);

nlohmann::json to_json(const CampaignReport& report);
/// Flat metric,value rows.
std::string to_csv(const CampaignReport& report);

}  // namespace gauntlet::analysis
