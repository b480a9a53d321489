#include <doctest.h>

#include <filesystem>

#include "gauntlet/classifiers/confusion.hpp"
#include "gauntlet/solver/cache.hpp"
#include "gauntlet/solver/records.hpp"
#include "gauntlet/solver/replay.hpp"
#include "gauntlet/solver/scheduler.hpp"
#include "helpers.hpp"

using namespace gauntlet;
using namespace gauntlet::solver;
using gauntlet::testing::Rig;

namespace {

classifiers::ConfusionBackend identity_backend() {
  return {classifiers::ConfusionMatrix::identity(9), classifiers::MatchedFilter(tiles::SynthSpec::defaults(9))};
}

service::ServiceConfig strict_config() {
  service::ServiceConfig c;
  c.policy = GradePolicy::strict();
  return c;
}

}  // namespace

TEST_CASE("prompts name their category") {
  const auto cats = CategorySet::defaults();
  CHECK(parse_prompt("Please click each image containing a truck", cats) == cats.require("truck"));
  CHECK(parse_prompt("Please click each image containing an airplane", cats) == cats.require("airplane"));
  CHECK(parse_prompt(prompt_text_for("motorcycle"), cats) == cats.require("motorcycle"));
  CHECK_THROWS_AS(parse_prompt("Please click each image containing a zebra", cats), FormatError);
  CHECK_THROWS_AS(parse_prompt("", cats), FormatError);
}

TEST_CASE("dedup cache matches within tau") {
  DedupCache exact(0);
  const auto m = classifiers::CategoryMask::of(category_at(2));
  CHECK_FALSE(exact.lookup({0b1010}).has_value());
  exact.store({0b1010}, m);
  CHECK(exact.lookup({0b1010}) == m);
  CHECK_FALSE(exact.lookup({0b1011}).has_value());
  CHECK(exact.hits() == 1);
  CHECK(exact.misses() == 2);

  DedupCache near(2);
  near.store({0b0000}, classifiers::CategoryMask::of(category_at(0)));
  near.store({0b0111}, classifiers::CategoryMask::of(category_at(1)));
  CHECK(near.lookup({0b0011}) == classifiers::CategoryMask::of(category_at(1)));
  CHECK(near.lookup({0b0001}) == classifiers::CategoryMask::of(category_at(0)));
  CHECK_FALSE(near.lookup({0xFF00}).has_value());
  CHECK_THROWS_AS(DedupCache(65), ConfigError);
}

TEST_CASE("session records round-trip through jsonl") {
  SessionRecord r;
  r.index = 3;
  r.session_id = "s";
  r.outcome = Outcome::Pass;
  r.timings = {1, 2, 3};
  r.total_ms = 6;
  r.selected_per_round = {2, 1};
  r.tiles.push_back({1, "t", 0xABCDEF0123456789ULL, 5, true, true});
  r.verified = true;
  CHECK(record_from_json(to_json(r)) == r);
  const auto file = std::filesystem::temp_directory_path() / "gauntlet-records-test.jsonl";
  write_records(file, {r, r});
  const auto back = read_records(file);
  CHECK(back.size() == 2);
  CHECK(back[1] == r);
  std::filesystem::remove(file);
  CHECK_THROWS_AS(record_from_json(nlohmann::json{{"index", "x"}}), FormatError);
}

TEST_CASE("identity solver passes strict challenges and accounts its time") {
  Rig rig(strict_config());
  const auto backend = identity_backend();
  DedupCache cache;
  SolverConfig cfg;
  for (std::uint64_t i = 0; i < 20; ++i) {
    SolverSession s(cfg, rig.transport, backend, cache, i, Rng(i), true);
    const auto r = run_simulated(s, rig.clock);
    CHECK(r.outcome == Outcome::Pass);
    CHECK(r.verified);
    CHECK(r.timings.sum() == r.total_ms);
    CHECK(r.timings.acquire >= (cfg.latencies.page + cfg.latencies.download).count());
    CHECK(r.timings.solve == cfg.latencies.solve.count() * r.rounds);
    CHECK(static_cast<int>(r.selected_per_round.size()) == r.rounds);
    CHECK(r.backend_calls + r.cache_hits == static_cast<int>(r.tiles.size()));
    rig.clock.advance(Millis{1000});
  }
  CHECK(rig.service.solves() == 20);
}

TEST_CASE("a download slower than the payload window is an error") {
  Rig rig;
  const auto backend = identity_backend();
  DedupCache cache;
  SolverConfig cfg;
  cfg.latencies.download = Millis{6000};
  SolverSession s(cfg, rig.transport, backend, cache, 0, Rng(1), true);
  const auto r = run_simulated(s, rig.clock);
  CHECK(r.outcome == Outcome::Error);
  CHECK(r.message == "payload expired");
}

TEST_CASE("blocked sessions record the server text") {
  service::ServiceConfig c;
  c.limits.concurrency_cap = 1;
  Rig rig(c);
  (void)rig.client.open_session(ClientProfile::regular_browser());
  const auto backend = identity_backend();
  DedupCache cache;
  SolverConfig cfg;
  SolverSession s(cfg, rig.transport, backend, cache, 0, Rng(1), true);
  const auto r = run_simulated(s, rig.clock);
  CHECK(r.outcome == Outcome::Blocked);
  CHECK(r.message == wire::kTooManyRequestsMessage);
}

TEST_CASE("recorded exchanges replay to the same session record") {
  Rig rig;
  const auto backend = identity_backend();
  DedupCache cache;
  SolverConfig cfg;
  RecordingTransport recorder(rig.transport);
  SolverSession live(cfg, recorder, backend, cache, 4, Rng(4), true);
  const auto original = run_simulated(live, rig.clock);

  const auto file = std::filesystem::temp_directory_path() / "gauntlet-replay-test.jsonl";
  recorder.save(file);
  auto replay = ReplayTransport::load(file);
  std::filesystem::remove(file);
  DedupCache fresh;
  SimClock clock;
  SolverSession again(cfg, replay, backend, fresh, 4, Rng(4), true);
  CHECK(run_simulated(again, clock) == original);
  CHECK(replay.exhausted());

  auto diverging = ReplayTransport(recorder.exchanges());
  CHECK_THROWS_AS(diverging.post(wire::kSiteverifyPath, {{"secret", "x"}, {"response", "y"}}), ProtocolError);
}

TEST_CASE("scheduler runs equal wake times in scheduling order") {
  EventScheduler sched;
  SimClock clock;
  std::vector<std::string> order;
  sched.at(Millis{10}, [&](Millis now) -> std::optional<Millis> {
    order.push_back("a@" + std::to_string(now.count()));
    if (now.count() < 30) return now + Millis{10};
    return std::nullopt;
  });
  sched.at(Millis{10}, [&](Millis now) -> std::optional<Millis> {
    order.push_back("b@" + std::to_string(now.count()));
    if (now.count() < 20) return now + Millis{10};
    return std::nullopt;
  });
  sched.run(clock);
  CHECK(order == std::vector<std::string>{"a@10", "b@10", "a@20", "b@20", "a@30"});
  CHECK(clock.now() == Millis{30});
}

TEST_CASE("a shared cache serves repeated images without backend calls") {
  service::ServiceConfig c;
  c.reuse_probability = 0.9;
  Rig rig(c);
  const auto backend = identity_backend();
  DedupCache cache;
  SolverConfig cfg;
  int hits = 0;
  for (std::uint64_t i = 0; i < 10; ++i) {
    SolverSession s(cfg, rig.transport, backend, cache, i, Rng(i), true);
    const auto r = run_simulated(s, rig.clock);
    hits += r.cache_hits;
    for (const auto& t : r.tiles) CHECK(t.labels != 0);
  }
  CHECK(hits > 0);
  CHECK(cache.hits() == static_cast<std::uint64_t>(hits));
}
