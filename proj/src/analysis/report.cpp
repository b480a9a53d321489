#include "gauntlet/analysis/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gauntlet::analysis {

using nlohmann::json;
using solver::Outcome;

CdfSeries cdf(std::vector<std::int64_t> values) {
  std::ranges::sort(values);
  CdfSeries out;
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    out.emplace_back(values[i], static_cast<double>(i + 1) / n);
  }
  return out;
}

double percent(std::uint64_t part, std::uint64_t whole) {
  if (whole == 0) return 0.0;
  return std::round(10000.0 * static_cast<double>(part) / static_cast<double>(whole)) / 100.0;
}

CampaignReport aggregate_campaign(const std::vector<solver::SessionRecord>& records, const json& ledger) {
  CampaignReport r;
  r.ledger = ledger;
  r.sessions = records.size();
  std::map<std::string, CategoryStat> cats;
  std::vector<std::int64_t> acquire, solve, submit, total;
  for (const auto& s : records) {
    r.backend_calls += static_cast<std::uint64_t>(s.backend_calls);
    r.cache_hits += static_cast<std::uint64_t>(s.cache_hits);
    switch (s.outcome) {
      case Outcome::Blocked:
        ++r.blocked;
        ++r.blocked_messages[s.message];
        continue;
      case Outcome::Error:
        ++r.errors;
        continue;
      case Outcome::Pass:
        ++r.passed;
        break;
      case Outcome::Fail:
        ++r.failed;
        break;
    }
    ++r.attempted;
    if (s.verified) ++r.verified;
    acquire.push_back(s.timings.acquire);
    solve.push_back(s.timings.solve);
    submit.push_back(s.timings.submit_verify);
    total.push_back(s.total_ms);
    auto& c = cats[s.target];
    c.name = s.target;
    ++c.attempted;
    if (s.outcome == Outcome::Pass) ++c.passed;
    int per_challenge = 0;
    for (int n : s.selected_per_round) {
      ++r.selections_per_round[n];
      ++r.rounds;
      per_challenge += n;
    }
    ++r.selections_per_challenge[per_challenge];
  }
  if (r.attempted > 0) {
    r.accuracy = static_cast<double>(r.passed) / static_cast<double>(r.attempted);
  }
  r.accuracy_percent = percent(r.passed, r.attempted);
  for (auto& [_, c] : cats) {
    c.frequency = static_cast<double>(c.attempted) / static_cast<double>(r.attempted);
    c.accuracy = static_cast<double>(c.passed) / static_cast<double>(c.attempted);
    r.per_category.push_back(c);
  }
  auto mean = [](const std::vector<std::int64_t>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (auto x : v) s += static_cast<double>(x);
    return s / static_cast<double>(v.size());
  };
  r.mean_acquire_ms = mean(acquire);
  r.mean_solve_ms = mean(solve);
  r.mean_submit_verify_ms = mean(submit);
  r.mean_total_ms = mean(total);
  r.cdf_acquire = cdf(std::move(acquire));
  r.cdf_solve = cdf(std::move(solve));
  r.cdf_submit_verify = cdf(std::move(submit));
  r.cdf_total = cdf(std::move(total));
  return r;
}

namespace {

json series(const CdfSeries& s) {
  json out = json::array();
  for (const auto& [v, f] : s) out.push_back({v, f});
  return out;
}

json histogram(const std::map<int, std::uint64_t>& h) {
  json out = json::object();
  for (const auto& [k, v] : h) out[std::to_string(k)] = v;
  return out;
}

}  // namespace

json to_json(const CampaignReport& r) {
  json cats = json::array();
  for (const auto& c : r.per_category) {
    cats.push_back({{"name", c.name},
                    {"attempted", c.attempted},
                    {"passed", c.passed},
                    {"frequency", c.frequency},
                    {"accuracy", c.accuracy}});
  }
  return {{"sessions", r.sessions},
          {"attempted", r.attempted},
          {"passed", r.passed},
          {"failed", r.failed},
          {"blocked", r.blocked},
          {"errors", r.errors},
          {"verified", r.verified},
          {"accuracy", r.accuracy},
          {"accuracy_percent", r.accuracy_percent},
          {"per_category", cats},
          {"selections_per_round", histogram(r.selections_per_round)},
          {"selections_per_challenge", histogram(r.selections_per_challenge)},
          {"rounds", r.rounds},
          {"backend_calls", r.backend_calls},
          {"cache_hits", r.cache_hits},
          {"mean_ms",
           {{"acquire", r.mean_acquire_ms},
            {"solve", r.mean_solve_ms},
            {"submit_verify", r.mean_submit_verify_ms},
            {"total", r.mean_total_ms}}},
          {"cdf_ms",
           {{"acquire", series(r.cdf_acquire)},
            {"solve", series(r.cdf_solve)},
            {"submit_verify", series(r.cdf_submit_verify)},
            {"total", series(r.cdf_total)}}},
          {"blocked_messages", r.blocked_messages},
          {"ledger", r.ledger}};
}

std::string to_csv(const CampaignReport& r) {
  std::ostringstream out;
  out.precision(10);
  out << "metric,value\n";
  out << "sessions," << r.sessions << "\n";
  out << "attempted," << r.attempted << "\n";
  out << "passed," << r.passed << "\n";
  out << "failed," << r.failed << "\n";
  out << "blocked," << r.blocked << "\n";
  out << "errors," << r.errors << "\n";
  out << "verified," << r.verified << "\n";
  out << "accuracy," << r.accuracy << "\n";
  out << "accuracy_percent," << r.accuracy_percent << "\n";
  out << "rounds," << r.rounds << "\n";
  out << "backend_calls," << r.backend_calls << "\n";
  out << "cache_hits," << r.cache_hits << "\n";
  out << "mean_acquire_ms," << r.mean_acquire_ms << "\n";
  out << "mean_solve_ms," << r.mean_solve_ms << "\n";
  out << "mean_submit_verify_ms," << r.mean_submit_verify_ms << "\n";
  out << "mean_total_ms," << r.mean_total_ms << "\n";
  for (const auto& c : r.per_category) {
    out << "category_" << c.name << "_attempted," << c.attempted << "\n";
    out << "category_" << c.name << "_accuracy," << c.accuracy << "\n";
  }
  for (const auto& [k, v] : r.selections_per_round) out << "selected_per_round_" << k << "," << v << "\n";
  if (r.ledger.is_object()) {
    if (r.ledger.contains("hmt_balance_decimal")) out << "hmt_balance," << r.ledger["hmt_balance_decimal"].get<std::string>() << "\n";
    if (r.ledger.contains("solves")) out << "hmt_solves," << r.ledger["solves"] << "\n";
  }
  return out.str();
}

}  // namespace gauntlet::analysis
