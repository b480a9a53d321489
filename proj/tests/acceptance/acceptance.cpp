// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "gauntlet/analysis/oracle.hpp"
#include "gauntlet/core/wire.hpp"
#include "gauntlet/hashkit/phash.hpp"
#include "gauntlet/runner/config.hpp"
#include "gauntlet/runner/harness.hpp"
#include "gauntlet/runner/scenarios.hpp"
#include "gauntlet/service/api.hpp"
#include "gauntlet/solver/client.hpp"

using namespace gauntlet;
using namespace gauntlet::runner;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool ok = false;
  std::string detail;
};

const fs::path kRoot = fs::temp_directory_path() / "gauntlet-acceptance";

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string fmt(double v, int digits = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

ExperimentConfig scenario(std::string_view name, const json& file, const std::string& dir) {
  auto c = resolve_config(name, file, std::nullopt, nullptr);
  c.output_dir = (kRoot / dir).string();
  return c;
}

std::string failed_checks(const ScenarioResult& r) {
  std::string out;
  for (const auto& c : r.checks) {
    if (!c.ok) out += (out.empty() ? "" : "; ") + c.name + (c.detail.empty() ? "" : " [" + c.detail + "]");
  }
  return out;
}

std::string file_bytes(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

Verdict table_reproduction() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto c = scenario("flexibility", {{"run", {{"trials_per_row", 10000}}}}, "c1");
  const auto r = run_scenario(c);
  const double secs = seconds_since(t0);
  std::string rows;
  for (const auto& row : r.report["rows"]) rows += fmt(row["observed_percent"].get<double>()) + " ";
  const bool ok = r.ok() && secs <= 60.0 && c.run.trials_per_row >= 10000;
  return {ok, "observed % " + rows + "in " + fmt(secs, 1) + " s" + (r.ok() ? "" : "; " + failed_checks(r))};
}

Verdict oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  const auto flex = GradePolicy::flexible();
  double worst = 0.0;
  std::size_t cases = 0;
  for (int m = 1; m <= 12; ++m)
    for (int n = 1; n <= m; ++n)
      for (double pt : grid)
        for (double pf : grid)
          for (auto type : {PromptType::Single, PromptType::Double})
            for (double scale : {1.0, 0.8}) {
              const analysis::SelectionModel model{pt, pf};
              const double a = analysis::pass_probability_dp(model, n, m, flex, type, scale);
              const double b = analysis::pass_probability_bruteforce(model, n, m, flex, type, scale);
              worst = std::max(worst, std::abs(a - b));
              ++cases;
            }
  const double secs = seconds_since(t0);
  return {worst <= 1e-12 && secs <= 30.0,
          std::to_string(cases) + " cases, max |dp - brute| = " + fmt(worst, 17) + " in " + fmt(secs, 2) + " s"};
}

Verdict campaign_consistency() {
  auto c = scenario("campaign", {{"run", {{"sessions", 10000}}}, {"solver", {{"persist_payloads", false}}}}, "c3");
  // Derived before the run.
  const double v = oracle_value(c, c.service, c.profile);
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run_scenario(c);
  const double secs = seconds_since(t0);
  const auto attempted = r.report["attempted"].get<std::uint64_t>();
  const auto passed = r.report["passed"].get<std::uint64_t>();
  const auto ci = analysis::binomial_interval(v, attempted);
  const double rate = attempted ? static_cast<double>(passed) / attempted : 0.0;
  const bool ok = c.backend.diagonal == 0.88 && attempted == 10000 && ci.contains(rate) && r.ok() && secs <= 180.0;
  return {ok, "V = " + fmt(v * 100, 3) + "%, observed " + fmt(rate * 100, 3) + "% in 99% CI [" + fmt(ci.lo * 100, 3) +
                  ", " + fmt(ci.hi * 100, 3) + "] over " + std::to_string(attempted) + " sessions, " + fmt(secs, 1) +
                  " s" + (r.ok() ? "" : "; " + failed_checks(r))};
}

Verdict strict_soundness() {
  auto c = scenario("campaign",
                    {{"run", {{"sessions", 270}}},
                     {"service", {{"policy", "strict"}}},
                     {"solver", {{"backend", {{"kind", "identity"}}}, {"persist_payloads", false}}}},
                    "c4");
  const auto r = run_scenario(c);
  const auto passed = r.report["passed"].get<std::int64_t>();
  const auto verified = r.report["verified"].get<std::int64_t>();
  const auto balance = r.report["ledger"]["hmt_balance_pico"].get<std::int64_t>();
  const auto expected = 270 * c.service.hmt_rate;
  const bool ok = passed == 270 && verified == 270 && balance == expected && r.ok();
  return {ok, std::to_string(passed) + "/270 passed, " + std::to_string(verified) + " verified, ledger " +
                  r.report["ledger"]["hmt_balance_decimal"].get<std::string>() + " HMT (discrepancy " +
                  std::to_string(balance - expected) + " pico)"};
}

Verdict repetition_analysis() {
  const auto c = scenario("dedup", json::object(), "c5");
  const auto r = run_scenario(c);
  const auto& truth = r.report["ground_truth"];
  const bool ok = r.ok() && truth["total"] == 48330 && truth["clusters"] == 1985 && truth["redundant"] == 9854 &&
                  r.report["phash"]["cluster_count"] == 1985 && r.report["phash"]["redundant"] == 9854 &&
                  r.report["partitions_equal"] == true;
  fs::remove_all(fs::path(c.output_dir) / "corpus");
  return {ok, "phash clusters " + r.report["phash"]["cluster_count"].dump() + ", redundant " +
                  r.report["phash"]["redundant"].dump() + ", partitions equal " +
                  r.report["partitions_equal"].dump() + (r.ok() ? "" : "; " + failed_checks(r))};
}

Verdict phash_properties() {
  const bool constant = hashkit::phash64(GrayImage(64, 64, 0)).bits == 0;
  Rng rng(2024);
  auto noise = [&] {
    GrayImage img(64, 64);
    for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(rng.below(256));
    return img;
  };
  bool copies = true;
  double total = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto a = noise();
    const GrayImage copy = a;
    copies = copies && hashkit::hamming(hashkit::phash64(a), hashkit::phash64(copy)) == 0;
    total += hashkit::hamming(hashkit::phash64(a), hashkit::phash64(noise()));
  }
  const double mean = total / 1000;
  return {constant && copies && mean >= 24 && mean <= 40,
          "all-zero -> 0x0: " + std::string(constant ? "yes" : "no") + ", copies at distance 0: " +
              (copies ? "yes" : "no") + ", mean noise distance " + fmt(mean)};
}

Verdict rate_limiting() {
  auto c = scenario("concurrency", {{"run", {{"sessions", 50}, {"concurrency", 50}, {"iterations", 1}}}}, "c7");
  const auto r = run_scenario(c);
  const int blocked = r.report["iterations"][0]["blocked"].get<int>();
  const auto& messages = r.report["blocked_messages"];
  const bool cap_ok = c.simulated_clock && c.service.limits.concurrency_cap == 25 && blocked == 25 &&
                      messages.size() == 1 &&
                      messages.contains("Your computer or network has sent too many requests.");

  // Sub-gap resubmission against a fresh service.
  service::ServiceConfig sc;
  sc.difficulty_table.levels[1] = {1.0, 1.0};  // two rounds, so the session stays open
  SimClock clock;
  service::Service svc(sc);
  service::ApiRouter router(svc);
  const auto sid = router.post(wire::kSessionPath, {{"profile", to_json(ClientProfile::regular_browser())}}, clock.now())
                       .body["session_id"]
                       .get<std::string>();
  const auto cid = router.post(wire::kChallengePath, {{"session_id", sid}}, clock.now()).body["challenge_id"];
  clock.advance(Millis{2000});
  const json first = {{"session_id", sid}, {"challenge_id", cid}, {"selections", {json::array()}}};
  const auto ok_first = router.post(wire::kAnswerPath, first, clock.now());
  clock.advance(Millis{400});
  const json second = {{"session_id", sid}, {"challenge_id", cid}, {"selections", {json::array(), json::array()}}};
  const auto refused = router.post(wire::kAnswerPath, second, clock.now());
  const std::string text = refused.body.value("error", "");
  const bool gap_ok = ok_first.status == 200 && refused.status == 429 &&
                      text == "Rate limited or network error. Please retry.";
  return {cap_ok && gap_ok, std::to_string(blocked) + " of 50 blocked with " + messages.dump() +
                                "; sub-gap resubmission -> " + std::to_string(refused.status) + " \"" + text + "\""};
}

Verdict token_protocol() {
  service::ServiceConfig sc;
  sc.limits.min_submit_gap = Millis{0};
  sc.limits.concurrency_cap = 1000;
  sc.limits.ip_max_requests = 1'000'000;
  const auto secret = sc.site_secret;
  Rng rng(8);
  std::size_t successes = 0;
  std::size_t verifies = 0;
  std::size_t passes = 0;
  bool ok = true;
  std::string why;
  for (int run = 0; run < 20 && ok; ++run) {
    sc.seed = 100 + static_cast<std::uint64_t>(run);
    SimClock clock;
    service::Service svc(sc);
    service::ApiRouter router(svc);
    service::InProcessTransport transport(router, clock);
    solver::ServiceClient client(transport);
    struct Open {
      std::string sid;
      wire::ChallengeView view;
      std::vector<std::vector<std::string>> sent;
    };
    std::vector<Open> open;
    std::set<std::string> minted;
    std::map<std::string, int> verified;
    std::vector<std::string> known;  // every token seen, plus forgeries
    for (int step = 0; step < 400 && ok; ++step) {
      switch (rng.below(6)) {
        case 0: {
          try {
            const auto sid = client.open_session(ClientProfile::regular_browser());
            open.push_back({sid, client.fetch_challenge(sid), {}});
          } catch (const solver::Blocked&) {
          }
          break;
        }
        case 1:
        case 2: {
          if (open.empty()) break;
          const std::size_t i = rng.below(open.size());
          auto& o = open[i];
          std::vector<std::string> pick;
          for (const auto& t : o.view.tiles)
            if (rng.bernoulli(0.3)) pick.push_back(t.tile_id);
          o.sent.push_back(pick);
          try {
            const auto reply = client.answer(o.sid, o.view.challenge_id, o.sent);
            if (reply.status == solver::AnswerReply::Status::Next) {
              o.view = *reply.next;
              break;
            }
            if (reply.status == solver::AnswerReply::Status::Pass) {
              ++passes;
              ok = ok && minted.insert(reply.token).second;
              known.push_back(reply.token);
            }
          } catch (const solver::ProtocolError&) {
          }
          open.erase(open.begin() + static_cast<std::ptrdiff_t>(i));
          break;
        }
        case 3: {
          std::string token = known.empty() || rng.bernoulli(0.2) ? std::string(64, "0123456789abcdef"[rng.below(16)])
                                                                   : known[rng.below(known.size())];
          const bool right = rng.bernoulli(0.8);
          const auto v = client.siteverify(right ? secret : "0xdeadbeef", token);
          ++verifies;
          if (v.success) {
            ++successes;
            if (!right) why = "success with a wrong secret";
            if (!minted.contains(token)) why = "success for a token never minted by a pass";
            if (++verified[token] > 1) why = "token verified twice";
            ok = ok && why.empty();
          }
          break;
        }
        case 4:
          clock.advance(Millis{static_cast<std::int64_t>(rng.below(60000))});
          break;
        default: {
          if (known.empty()) break;
          const auto v = client.siteverify("", known[rng.below(known.size())]);
          ok = ok && !v.success;
          if (v.success) why = "success with an empty secret";
          break;
        }
      }
    }
  }
  // Guard against a vacuous run.
  ok = ok && passes > 0 && successes > 0;
  return {ok, std::to_string(verifies) + " siteverify calls, " + std::to_string(passes) + " passes, " +
                  std::to_string(successes) + " successes" + (why.empty() ? "" : "; " + why)};
}

Verdict invariance() {
  json variants = json::array();
  for (const char* ip : {"regular", "academic", "vpn", "tor"})
    for (bool webdriver : {false, true}) variants.push_back({{"preset", "regular"}, {"ip_tag", ip}, {"webdriver", webdriver}});
  auto c = scenario("adaptability", {{"run", {{"sessions", 100}, {"variants", variants}}}}, "c9");
  const auto r = run_scenario(c);
  const bool ok = !c.service.adaptive && r.report["variants"].size() == 8 &&
                  r.report["identical_challenge_streams"] == true && r.report["identical_grade_decisions"] == true;
  std::size_t decided = 0;
  for (const auto& v : r.report["variants"]) decided += v["attempted"].get<std::size_t>();
  return {ok && decided == 800, "8 variants x 100 sessions, identical streams " +
                                    r.report["identical_challenge_streams"].dump() + ", identical decisions " +
                                    r.report["identical_grade_decisions"].dump()};
}

Verdict difficulty_direction() {
  const auto c = scenario("blocking", json::object(), "c10");
  const auto r = run_scenario(c);
  std::map<std::string, json> levels;
  for (const auto& l : r.report["levels"]) levels[l["difficulty"].get<std::string>()] = l;
  const auto mod = levels.at("moderate");
  const auto dif = levels.at("difficult");
  const double om = mod["oracle_percent"].get<double>();
  const double od = dif["oracle_percent"].get<double>();
  const bool ok = dif["accounts"].get<int>() <= mod["accounts"].get<int>() && std::abs(om - 92.25) <= 3.0 &&
                  std::abs(od - 88.5) <= 3.0 && r.ok();
  return {ok, "accounts moderate " + mod["accounts"].dump() + "/400, difficult " + dif["accounts"].dump() +
                  "/400; oracle " + fmt(om) + "% / " + fmt(od) + "%" + (r.ok() ? "" : "; " + failed_checks(r))};
}

Verdict reproducibility() {
  // Small but complete runs of every scenario, twice each.
  const std::map<std::string, json> files = {
      {"campaign", {{"run", {{"sessions", 60}}}}},
      {"flexibility", {{"run", {{"trials_per_row", 500}}}}},
      {"ip-study", {{"run", {{"sessions", 20}}}}},
      {"adaptability", {{"run", {{"sessions", 20}}}}},
      {"blocking", {{"run", {{"sessions", 40}}}}},
      {"concurrency", {{"run", {{"iterations", 2}}}}},
      {"dedup", {{"run", {{"corpus", {{"total_draws", 3000}, {"clusters", 120}, {"redundant", 600}}}}}}},
      {"oracle", json::object()}};
  std::string differing;
  for (const auto& [name, file] : files) {
    const auto a = scenario(name, file, "c11/" + name + "-a");
    const auto b = scenario(name, file, "c11/" + name + "-b");
    (void)run_scenario(a);
    (void)run_scenario(b);
    const auto bytes_a = file_bytes(fs::path(a.output_dir) / "records.jsonl");
    const auto bytes_b = file_bytes(fs::path(b.output_dir) / "records.jsonl");
    if (bytes_a.empty() || bytes_a != bytes_b) differing += name + " ";
  }
  return {differing.empty(), differing.empty() ? "records.jsonl byte-identical for all 8 scenarios"
                                               : "differs: " + differing};
}

}  // namespace

int main() {
  fs::remove_all(kRoot);
  fs::create_directories(kRoot);
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"flexibility table reproduction", table_reproduction},
      {"oracle equivalence", oracle_equivalence},
      {"campaign consistency", campaign_consistency},
      {"strict-mode soundness", strict_soundness},
      {"repetition analysis", repetition_analysis},
      {"phash properties", phash_properties},
      {"rate limiting", rate_limiting},
      {"token protocol", token_protocol},
      {"non-adaptive invariance", invariance},
      {"difficulty direction", difficulty_direction},
      {"reproducibility", reproducibility}};
  int failures = 0;
  int n = 0;
  double slowest = 0.0;
  for (const auto& [name, run] : criteria) {
    ++n;
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    slowest = std::max(slowest, seconds_since(t0));
    failures += v.ok ? 0 : 1;
    std::cout << (v.ok ? "PASS" : "FAIL") << " criterion " << n << " (" << name << "): " << v.detail << std::endl;
  }

  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  const double peak_mb = static_cast<double>(usage.ru_maxrss) / 1024.0;
  const double total = seconds_since(start);
  const double cpu = static_cast<double>(usage.ru_utime.tv_sec + usage.ru_stime.tv_sec) +
                     static_cast<double>(usage.ru_utime.tv_usec + usage.ru_stime.tv_usec) / 1e6;
  // The suite runs in one process, so its peak RSS bounds the memory a
  // container needs. No criterion may take longer than 5 minutes.
  const bool envelope = failures == 0 && peak_mb < 2048.0 && slowest <= 300.0;
  std::cout << (envelope ? "PASS" : "FAIL") << " criterion 12 (resource envelope): peak RSS " << fmt(peak_mb, 1)
            << " MB, slowest criterion " << fmt(slowest, 1) << " s, wall " << fmt(total, 1) << " s, cpu " << fmt(cpu, 1) << " s, criteria 1-11 "
            << (failures == 0 ? "all pass" : "have failures") << std::endl;
  failures += envelope ? 0 : 1;
  fs::remove_all(kRoot);
  return failures == 0 ? 0 : 1;
}
