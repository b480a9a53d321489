#include "gauntlet/runner/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "gauntlet/analysis/dedup.hpp"
#include "gauntlet/analysis/oracle.hpp"
#include "gauntlet/analysis/report.hpp"
#include "gauntlet/runner/harness.hpp"
#include "gauntlet/runner/registration.hpp"
#include "gauntlet/solver/client.hpp"

namespace gauntlet::runner {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Output {
  std::vector<json> lines;  // records.jsonl, in order
  json report = json::object();
  std::string csv;  // empty: flattened from the report
  std::vector<Check> checks;

  void check(std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
};

std::string fmt(double v, int digits = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

void flatten(const json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    const std::string v = j.is_string() ? j.get<std::string>() : j.dump();
    const bool quote = v.find_first_of(",\"\n") != std::string::npos;
    std::string escaped;
    for (char c : v) escaped += c == '"' ? std::string("\"\"") : std::string(1, c);
    out << prefix << ',' << (quote ? '"' + escaped + '"' : v) << '\n';
  }
}

ClientProfile forced_none() { return ClientProfile::regular_browser(); }

json interval_json(const analysis::Interval& ci) { return {{"lo", ci.lo}, {"hi", ci.hi}}; }

// Signature of what a session saw from the service, excluding anything the
// client itself chose (profile, ip tag).
json stream_signature(const solver::SessionRecord& r) {
  json tiles = json::array();
  for (const auto& t : r.tiles) tiles.push_back({t.round, t.tile_id, t.selected});
  return {r.session_id, r.challenge_id, r.target, r.rounds, solver::to_string(r.outcome), r.message, tiles};
}

json decision_json(const service::DecisionRecord& d) {
  json classes = json::array();
  for (auto c : d.classes) classes.push_back(to_string(c));
  return {d.session_id, d.challenge_id, index_of(d.target), to_string(d.prompt_type), classes, d.probability, d.pass};
}

// ---------------------------------------------------------------- campaign

std::string records_first_error(const std::vector<solver::SessionRecord>& records) {
  for (const auto& r : records) {
    if (r.outcome == solver::Outcome::Error) return "session " + std::to_string(r.index) + ": " + r.message;
  }
  return {};
}

void campaign(const ExperimentConfig& c, const RunOptions& opt, Output& out) {
  const bool oracle = oracle_applies(c);
  const double v = oracle ? oracle_value(c, c.service, c.profile) : 0.0;

  Runtime rt(c.service, c.simulated_clock, opt.over_network, c.network);
  const auto labeler = make_labeler(c);
  solver::DedupCache cache(c.tau);
  auto solver_config = make_solver_config(c, c.profile, true);
  if (c.persist_payloads) {
    solver_config.payload_dir = fs::path(c.output_dir) / "payloads";
    fs::remove_all(*solver_config.payload_dir);
    fs::create_directories(*solver_config.payload_dir);
  }
  const auto records = run_sessions(rt, solver_config, *labeler, cache,
                                    {c.run.sessions, c.run.concurrency, c.run.session_gap, 0}, c.seed);
  const json ledger = solver::ServiceClient(rt.transport()).ledger();
  const auto report = analysis::aggregate_campaign(records, ledger);
  for (const auto& r : records) out.lines.push_back(solver::to_json(r));

  out.report = analysis::to_json(report);
  out.csv = analysis::to_csv(report);
  out.report["cache"] = {{"tau", c.tau}, {"hits", cache.hits()}, {"misses", cache.misses()}, {"entries", cache.size()}};

  out.check("sessions accounted", report.attempted + report.blocked + report.errors == report.sessions &&
                                      report.sessions == static_cast<std::uint64_t>(c.run.sessions));
  out.check("no session errors", report.errors == 0,
            report.errors ? records_first_error(records) : std::string());
  std::uint64_t tiles = 0;
  for (const auto& r : records) tiles += r.tiles.size();
  out.check("backend calls plus cache hits cover every tile", report.backend_calls + report.cache_hits == tiles,
            std::to_string(report.backend_calls) + " + " + std::to_string(report.cache_hits) + " vs " +
                std::to_string(tiles));
  out.check("every pass verified exactly once", report.verified == report.passed,
            std::to_string(report.verified) + " of " + std::to_string(report.passed));

  const bool flagged = service::threat_score(c.profile) >= c.service.flag_threshold;
  const std::uint64_t credited = flagged && !c.service.flagged_sessions_earn ? 0 : report.passed;
  const auto expected = static_cast<service::Pico>(credited) * c.service.hmt_rate;
  const auto balance = ledger.at("hmt_balance_pico").get<service::Pico>();
  out.check("hmt ledger matches credited passes", balance == expected,
            std::to_string(balance) + " pico vs " + std::to_string(expected));
  out.check("ledger solves equal passes", ledger.at("solves").get<std::uint64_t>() == report.passed);

  if (oracle) {
    const auto ci = analysis::binomial_interval(v, report.attempted);
    out.report["oracle"] = {{"expected_accuracy", v}, {"ci99", interval_json(ci)}};
    out.check("pass rate within 99% CI of oracle", report.attempted > 0 && ci.contains(report.accuracy),
              fmt(report.accuracy) + " in [" + fmt(ci.lo) + ", " + fmt(ci.hi) + "]");
  }
}

// ------------------------------------------------------------- flexibility

struct FlexRow {
  PromptType type;
  ConditionClass cls;
};

std::vector<std::string> select_for(const Round& round, CategoryId target, ConditionClass cls) {
  std::vector<std::string> hits;
  std::vector<std::string> misses;
  for (const auto& t : round.tiles) (t.truth == target ? hits : misses).push_back(t.tile_id);
  if (cls == ConditionClass::MissingOne || cls == ConditionClass::MissingOnePlusWrong) hits.pop_back();
  if (cls == ConditionClass::AllCorrectPlusWrong || cls == ConditionClass::MissingOnePlusWrong)
    hits.push_back(misses.front());
  return hits;
}

void flexibility(const ExperimentConfig& c, Output& out) {
  const std::vector<FlexRow> rows = {{PromptType::Single, ConditionClass::AllCorrectPlusWrong},
                                     {PromptType::Double, ConditionClass::AllCorrectPlusWrong},
                                     {PromptType::Single, ConditionClass::MissingOne},
                                     {PromptType::Double, ConditionClass::MissingOne},
                                     {PromptType::Single, ConditionClass::MissingOnePlusWrong},
                                     {PromptType::Double, ConditionClass::MissingOnePlusWrong}};
  const auto& s = c.service;
  const int m = s.shape.tiles_per_round;
  if (m < 4) throw ConfigError("flexibility trials need at least 4 tiles per round");
  service::ChallengeFactory factory(s.categories, s.shape);
  tiles::TilePool pool(s.synth, s.categories.size(), s.reuse_probability, Rng::stream(c.seed, "pool"));
  pool.set_rendering(false);
  const auto knobs = s.difficulty_table.at(s.difficulty);
  const Rng challenge_root = Rng::stream(c.seed, "challenge");
  const Rng grade_root = Rng::stream(c.seed, "grade");
  const int trials = c.run.trials_per_row;

  json table = json::array();
  std::uint64_t serial = 0;
  for (const auto& row : rows) {
    const double expected = s.policy.probability(row.type, row.cls) * knobs.flexibility_scale;
    std::uint64_t passes = 0;
    bool classes_ok = true;
    for (int t = 0; t < trials; ++t, ++serial) {
      // N >= 3 keeps the missing-one classes reachable and one non-target exists.
      const int n = 3 + t % std::min(4, m - 3);
      Rng rng = challenge_root.fork(serial);
      const auto ch = factory.make(pool, rng, knobs, Millis{0}, s.payload_ttl, {std::nullopt, row.type, n});
      Selection sel{ch.challenge_id, {}};
      for (const auto& round : ch.rounds) sel.rounds.push_back(select_for(round, ch.target, row.cls));
      Rng grade = grade_root.fork(serial);
      const auto d = grade_challenge(ch, sel, s.policy, grade);
      for (auto cls : d.classes) classes_ok = classes_ok && cls == row.cls;
      passes += d.pass ? 1 : 0;
      out.lines.push_back({{"prompt_type", to_string(row.type)},
                           {"condition", to_string(row.cls)},
                           {"trial", t},
                           {"targets", n},
                           {"challenge_id", ch.challenge_id},
                           {"pass", d.pass}});
    }
    const double observed = trials > 0 ? static_cast<double>(passes) / trials : 0.0;
    const double gap_pp = std::abs(observed - expected) * 100.0;
    table.push_back({{"prompt_type", to_string(row.type)},
                     {"condition", to_string(row.cls)},
                     {"trials", trials},
                     {"passes", passes},
                     {"expected_percent", std::round(expected * 10000.0) / 100.0},
                     {"observed_percent", analysis::percent(passes, static_cast<std::uint64_t>(trials))},
                     {"difference_pp", gap_pp}});
    const std::string name = std::string(to_string(row.type)) + "/" + std::string(to_string(row.cls));
    out.check(name + " graded as intended", classes_ok);
    out.check(name + " within 1.5 pp", trials > 0 && gap_pp <= 1.5,
              fmt(observed * 100, 2) + "% vs " + fmt(expected * 100, 2) + "%");
  }
  out.report = {{"difficulty", service::to_string(s.difficulty)},
                {"flexibility_scale", knobs.flexibility_scale},
                {"trials_per_row", trials},
                {"rows", table}};
}

// ------------------------------------------------- ip-study / adaptability

void variants(const ExperimentConfig& c, const RunOptions& opt, Output& out) {
  std::vector<ClientProfile> profiles = c.run.variants;
  if (profiles.empty()) profiles.push_back(c.profile);
  const bool oracle = oracle_applies(c);
  const auto labeler = make_labeler(c);

  json summaries = json::array();
  std::vector<json> signatures;
  std::vector<json> decisions;
  for (std::size_t v = 0; v < profiles.size(); ++v) {
    const auto& profile = profiles[v];
    Runtime rt(c.service, c.simulated_clock, opt.over_network, c.network);
    solver::DedupCache cache(c.tau);
    const auto records = run_sessions(rt, make_solver_config(c, profile, true), *labeler, cache,
                                      {c.run.sessions, 1, c.run.session_gap, 0}, c.seed);
    const auto report = analysis::aggregate_campaign(records, solver::ServiceClient(rt.transport()).ledger());
    json sig = json::array();
    for (const auto& r : records) {
      auto line = solver::to_json(r);
      line["variant"] = v;
      out.lines.push_back(std::move(line));
      sig.push_back(stream_signature(r));
    }
    json dec = json::array();
    for (const auto& d : rt.service().decisions()) dec.push_back(decision_json(d));
    signatures.push_back(std::move(sig));
    decisions.push_back(std::move(dec));

    const double threat = service::threat_score(profile);
    json summary = {{"variant", v},
                    {"profile", to_json(profile)},
                    {"threat_score", threat},
                    {"flagged", threat >= c.service.flag_threshold},
                    {"sessions", report.sessions},
                    {"attempted", report.attempted},
                    {"passed", report.passed},
                    {"blocked", report.blocked},
                    {"accuracy_percent", report.accuracy_percent},
                    {"over_90_percent", report.accuracy > 0.9},
                    {"ledger", report.ledger}};
    if (oracle) {
      const double expect = oracle_value(c, c.service, profile);
      const auto ci = analysis::binomial_interval(expect, report.attempted);
      summary["oracle"] = {{"expected_accuracy", expect}, {"ci99", interval_json(ci)}};
      out.check("variant " + std::to_string(v) + " within 99% CI of oracle",
                report.attempted > 0 && ci.contains(report.accuracy),
                fmt(report.accuracy) + " in [" + fmt(ci.lo) + ", " + fmt(ci.hi) + "]");
    }
    summaries.push_back(std::move(summary));
  }

  bool same_stream = true;
  bool same_decisions = true;
  for (std::size_t v = 1; v < profiles.size(); ++v) {
    same_stream = same_stream && signatures[v] == signatures[0];
    same_decisions = same_decisions && decisions[v] == decisions[0];
  }
  out.report = {{"adaptive", c.service.adaptive},
                {"variants", summaries},
                {"identical_challenge_streams", same_stream},
                {"identical_grade_decisions", same_decisions}};
  // An adaptive service is expected to treat variants differently.
  if (!c.service.adaptive) {
    out.check("identical challenge streams across variants", same_stream);
    out.check("identical grade decisions across variants", same_decisions);
  }
}

// ---------------------------------------------------------------- blocking

void blocking(const ExperimentConfig& c, const RunOptions& opt, Output& out) {
  const bool oracle = oracle_applies(c);
  const ExperimentConfig defaults;
  // The calibration targets describe the shipped policy, shape and table only.
  const bool calibrated = oracle && c.backend.kind == "confusion" && c.backend.per_category.empty() &&
                          c.service.policy == defaults.service.policy &&
                          c.service.shape == defaults.service.shape &&
                          c.service.difficulty_table == defaults.service.difficulty_table && !c.service.adaptive;
  const std::map<service::DifficultyLevel, double> reference_rates = {{service::DifficultyLevel::Moderate, 0.9225},
                                                                  {service::DifficultyLevel::Difficult, 0.885}};
  json levels = json::array();
  std::map<service::DifficultyLevel, std::uint64_t> accounts;
  for (auto level : c.run.difficulties) {
    ExperimentConfig run = c;
    run.service.difficulty = level;
    const auto rep = registration_demo(run, opt.over_network);
    for (const auto& a : rep.attempts_log) {
      auto line = to_json(a);
      line["difficulty"] = rep.difficulty;
      out.lines.push_back(std::move(line));
    }
    accounts[level] = rep.accounts;
    json summary = summary_json(rep);
    summary["accounts_percent"] = analysis::percent(rep.accounts, rep.attempts);
    if (oracle) {
      const double v = oracle_value(run, run.service, run.profile);
      summary["oracle_percent"] = v * 100.0;
      const double rate = rep.attempts ? static_cast<double>(rep.accounts) / rep.attempts : 0.0;
      out.check(rep.difficulty + " accounts within 3 pp of oracle", std::abs(rate - v) <= 0.03,
                fmt(rate * 100, 2) + "% vs " + fmt(v * 100, 2) + "%");
      if (calibrated && reference_rates.contains(level)) {
        const double target = reference_rates.at(level);
        out.check(rep.difficulty + " oracle within 3 pp of calibration target", std::abs(v - target) <= 0.03,
                  fmt(v * 100, 2) + "% vs " + fmt(target * 100, 2) + "%");
      }
    }
    levels.push_back(std::move(summary));
  }
  using enum service::DifficultyLevel;
  if (accounts.contains(Moderate) && accounts.contains(Difficult)) {
    out.check("difficult registers no more accounts than moderate", accounts[Difficult] <= accounts[Moderate],
              std::to_string(accounts[Difficult]) + " vs " + std::to_string(accounts[Moderate]));
  }
  out.report = {{"levels", levels}};
}

// ------------------------------------------------------------- concurrency

void concurrency(const ExperimentConfig& c, const RunOptions& opt, Output& out) {
  Runtime rt(c.service, c.simulated_clock, opt.over_network, c.network);
  const auto labeler = make_labeler(c);
  solver::DedupCache cache(c.tau);
  const auto solver_config = make_solver_config(c, c.profile, true);
  const int n = c.run.sessions;
  const int expected_blocked = std::max(0, std::min(n, c.run.concurrency) - c.service.limits.concurrency_cap);

  json per_iteration = json::array();
  std::map<std::string, std::uint64_t> messages;
  bool counts_ok = true;
  bool messages_ok = true;
  for (int it = 0; it < c.run.iterations; ++it) {
    if (it > 0) rt.wait(c.run.session_gap);
    const auto records = run_sessions(rt, solver_config, *labeler, cache,
                                      {n, c.run.concurrency, Millis{0}, static_cast<std::uint64_t>(it) * n}, c.seed);
    int blocked = 0;
    for (const auto& r : records) {
      auto line = solver::to_json(r);
      line["iteration"] = it;
      out.lines.push_back(std::move(line));
      if (r.outcome != solver::Outcome::Blocked) continue;
      ++blocked;
      ++messages[r.message];
      messages_ok = messages_ok && r.message == wire::kTooManyRequestsMessage;
    }
    const auto report = analysis::aggregate_campaign(records);
    per_iteration.push_back({{"iteration", it}, {"blocked", blocked}, {"passed", report.passed},
                             {"failed", report.failed}, {"errors", report.errors}});
    counts_ok = counts_ok && blocked == expected_blocked;
  }
  out.report = {{"sessions_per_iteration", n},
                {"concurrency_cap", c.service.limits.concurrency_cap},
                {"iterations", per_iteration},
                {"blocked_messages", messages},
                {"ledger", solver::ServiceClient(rt.transport()).ledger()}};
  out.check("blocked responses carry the exact message", messages_ok);
  // Wall-clock arrival order is not controlled, so exact counts are checked only in lockstep.
  if (c.simulated_clock) {
    out.check("each iteration blocks sessions beyond the cap", counts_ok,
              "expected " + std::to_string(expected_blocked) + " per iteration");
  }
}

// ------------------------------------------------------------------- dedup

void dedup(const ExperimentConfig& c, Output& out) {
  const auto& s = c.service;
  const fs::path dir = fs::path(c.output_dir) / "corpus";
  fs::remove_all(dir);
  fs::create_directories(dir);
  Rng plan_rng = Rng::stream(c.seed, "plan");
  const auto plan = tiles::plan_repetition(c.run.corpus, s.categories.size(), plan_rng);
  tiles::TilePool pool(s.synth, s.categories.size(), s.reuse_probability, Rng::stream(c.seed, "pool"));
  auto name_of = [](std::uint64_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "d%06llu", static_cast<unsigned long long>(i));
    return std::string(buf);
  };
  tiles::execute_plan(pool, plan, [&](const tiles::PoolDraw& d) {
    const auto index = pool.draw_log().back().draw_index;
    const auto name = name_of(index);
    write_pgm(dir / (name + ".pgm"), *d.bitmap);
    out.lines.push_back({{"draw_index", index},
                         {"slot", d.slot},
                         {"reused", d.reused},
                         {"category", s.categories.name(d.category)},
                         {"file", name + ".pgm"}});
  });
  const auto truth = analysis::report_from_draw_log(pool.draw_log(), name_of);
  const auto found = analysis::dedup_report(dir, c.tau);
  out.report = analysis::to_json(found);
  out.report["ground_truth"] = {{"total", truth.total},
                                {"clusters", truth.clusters.size()},
                                {"redundant", truth.redundant}};
  // Cluster lists are large; the summary keeps counts only.
  for (const char* key : {"phash", "exact"}) {
    if (out.report.contains(key) && out.report[key].is_object()) {
      auto& r = out.report[key];
      r["cluster_count"] = r["clusters"].size();
      r.erase("clusters");
    }
  }
  out.check("ground truth has the planned clusters", truth.clusters.size() == c.run.corpus.clusters,
            std::to_string(truth.clusters.size()));
  out.check("ground truth has the planned redundant copies", truth.redundant == c.run.corpus.redundant,
            std::to_string(truth.redundant));
  out.check("exact digests recover the ground truth", found.exact == truth,
            std::to_string(found.exact.clusters.size()) + " clusters, " + std::to_string(found.exact.redundant) +
                " redundant");
  out.check("phash recovers the ground truth", found.phash == truth,
            std::to_string(found.phash.clusters.size()) + " clusters, " + std::to_string(found.phash.redundant) +
                " redundant");
  out.check("phash and exact partitions agree", found.partitions_equal);
}

// ------------------------------------------------------------------ oracle

void oracle(const ExperimentConfig& c, Output& out) {
  const auto& s = c.service;
  const int m = s.shape.tiles_per_round;
  const auto k = static_cast<double>(s.categories.size());
  const std::vector<double> grid = {0.80, 0.85, 0.88, 0.90, 0.95, 0.965, 0.99, 1.0};
  const bool brute = m <= 20;
  const auto strict = GradePolicy::strict();

  double worst_gap = 0.0;
  bool flexible_dominates = true;
  for (double pt : grid) {
    const analysis::SelectionModel model{pt, (1.0 - pt) / (k - 1.0)};
    for (int n = 1; n <= m; ++n) {
      for (auto type : {PromptType::Single, PromptType::Double}) {
        const double dp = analysis::pass_probability_dp(model, n, m, s.policy, type);
        const double st = analysis::pass_probability_dp(model, n, m, strict, type);
        json line = {{"p_t", model.p_t}, {"p_f", model.p_f}, {"targets", n}, {"tiles", m},
                     {"prompt_type", to_string(type)}, {"policy_dp", dp}, {"strict_dp", st}};
        if (brute) {
          const double bf = analysis::pass_probability_bruteforce(model, n, m, s.policy, type);
          line["policy_bruteforce"] = bf;
          worst_gap = std::max(worst_gap, std::abs(dp - bf));
        }
        flexible_dominates = flexible_dominates && dp >= st - 1e-15;
        out.lines.push_back(std::move(line));
      }
    }
  }

  json campaign = json::array();
  bool monotone = true;
  for (std::size_t level = 0; level < s.difficulty_table.levels.size(); ++level) {
    service::ServiceConfig at = s;
    at.difficulty = static_cast<service::DifficultyLevel>(level);
    const auto shape = shape_for(at, forced_none());
    json row = {{"difficulty", service::to_string(at.difficulty)}};
    json by_pt = json::array();
    double previous = -1.0;
    for (double pt : grid) {
      const auto matrix = classifiers::ConfusionMatrix::uniform_diagonal(s.categories.size(), pt);
      const double v = analysis::expected_campaign_accuracy(matrix, s.policy, shape);
      const double vs = analysis::expected_campaign_accuracy(matrix, strict, shape);
      monotone = monotone && v >= previous - 1e-12;
      previous = v;
      by_pt.push_back({{"diagonal", pt}, {"accuracy", v}, {"strict_accuracy", vs}});
    }
    row["by_diagonal"] = by_pt;
    if (oracle_applies(c)) {
      ExperimentConfig configured = c;
      configured.service = at;
      row["configured_backend_accuracy"] = oracle_value(configured, at, c.profile);
    }
    campaign.push_back(std::move(row));
  }
  out.report = {{"tiles_per_round", m}, {"campaign_accuracy", campaign}};
  if (brute) {
    out.report["max_dp_bruteforce_gap"] = worst_gap;
    out.check("dynamic programming matches enumeration", worst_gap <= 1e-12, fmt(worst_gap, 17));
  }
  out.check("configured policy never below strict", flexible_dominates);
  out.check("campaign accuracy nondecreasing in diagonal", monotone);
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream f(file, std::ios::binary);
  if (!f) throw IoError("cannot write " + file.string());
  f << text;
  if (!f) throw IoError("write failed: " + file.string());
}

}  // namespace

bool ScenarioResult::ok() const {
  return std::ranges::all_of(checks, &Check::ok);
}

json to_json(const Check& c) { return {{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}}; }

ScenarioResult run_scenario(const ExperimentConfig& config, const RunOptions& options) {
  validate(config);
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  write_text(dir / "config-echo.json", to_json(config).dump(2) + "\n");

  const auto started = std::chrono::steady_clock::now();
  Output out;
  const auto& name = config.scenario;
  if (name == "campaign") {
    campaign(config, options, out);
  } else if (name == "flexibility") {
    flexibility(config, out);
  } else if (name == "ip-study" || name == "adaptability") {
    variants(config, options, out);
  } else if (name == "blocking") {
    blocking(config, options, out);
  } else if (name == "concurrency") {
    concurrency(config, options, out);
  } else if (name == "dedup") {
    dedup(config, out);
  } else if (name == "oracle") {
    oracle(config, out);
  } else {
    throw ConfigError("unknown scenario: " + name);
  }
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();

  {
    std::ofstream f(dir / "records.jsonl", std::ios::binary);
    if (!f) throw IoError("cannot write records.jsonl in " + dir.string());
    for (const auto& line : out.lines) f << line.dump() << '\n';
  }
  ScenarioResult result;
  result.checks = out.checks;
  result.report = std::move(out.report);
  result.report["scenario"] = name;
  result.report["seed"] = config.seed;
  result.report["clock"] = config.simulated_clock ? "simulated" : "wall";
  result.report["transport"] = options.over_network ? "http" : "in-process";
  result.report["runtime_ms"] = elapsed;
  json checks = json::array();
  for (const auto& c : result.checks) checks.push_back(to_json(c));
  result.report["checks"] = checks;
  result.report["ok"] = result.ok();
  write_text(dir / "report.json", result.report.dump(2) + "\n");

  std::string csv = out.csv;
  if (csv.empty()) {
    std::ostringstream flat;
    flat << "metric,value\n";
    flatten(result.report, "", flat);
    csv = flat.str();
  } else {
    std::ostringstream flat;
    flatten(checks, "checks", flat);
    csv += flat.str();
  }
  write_text(dir / "report.csv", csv);
  return result;
}

json summarize_run(const fs::path& run_dir) {
  const auto records_file = run_dir / "records.jsonl";
  const auto report_file = run_dir / "report.json";
  if (!fs::exists(records_file) && !fs::exists(report_file)) {
    throw IoError("no run found in " + run_dir.string());
  }
  json summary = json::object();
  if (fs::exists(report_file)) {
    std::ifstream f(report_file);
    try {
      const json report = json::parse(f);
      for (const char* key : {"scenario", "seed", "clock", "ok", "checks"}) {
        if (report.contains(key)) summary[key] = report[key];
      }
    } catch (const json::parse_error& e) {
      throw FormatError(report_file.string() + ": " + e.what());
    }
  }
  if (fs::exists(records_file)) {
    std::ifstream f(records_file);
    std::string line;
    std::vector<solver::SessionRecord> sessions;
    std::uint64_t lines = 0;
    while (std::getline(f, line)) {
      if (line.empty()) continue;
      ++lines;
      json j;
      try {
        j = json::parse(line);
      } catch (const json::parse_error& e) {
        throw FormatError(records_file.string() + ": line " + std::to_string(lines) + ": " + e.what());
      }
      if (j.contains("session_id")) sessions.push_back(solver::record_from_json(j));
    }
    summary["records"] = lines;
    if (!sessions.empty()) {
      const auto report = analysis::aggregate_campaign(sessions);
      auto rj = analysis::to_json(report);
      rj.erase("cdf_ms");
      summary["sessions"] = rj;
    }
  }
  return summary;
}

}  // namespace gauntlet::runner
