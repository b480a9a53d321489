#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "gauntlet/runner/config.hpp"
#include "gauntlet/runner/harness.hpp"
#include "gauntlet/runner/registration.hpp"
#include "gauntlet/runner/scenarios.hpp"
#include "helpers.hpp"

using namespace gauntlet;
using namespace gauntlet::runner;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string config_error(const json& file) {
  try {
    (void)resolve_config("campaign", file, std::nullopt, nullptr);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

// Every key path of a document, with array elements skipped.
void key_paths(const json& j, const std::string& prefix, std::set<std::string>& out) {
  if (!j.is_object()) return;
  for (const auto& [k, v] : j.items()) {
    const auto path = prefix.empty() ? k : prefix + "." + k;
    out.insert(path);
    key_paths(v, path, out);
  }
}

void schema_paths(const json& schema, const std::string& prefix, std::set<std::string>& out) {
  const json* node = &schema;
  if (schema.contains("oneOf")) {
    for (const auto& alt : schema["oneOf"])
      if (alt.contains("properties")) node = &alt;
  }
  if (!node->contains("properties")) return;
  for (const auto& [k, v] : (*node)["properties"].items()) {
    const auto path = prefix.empty() ? k : prefix + "." + k;
    out.insert(path);
    schema_paths(v, path, out);
  }
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("gauntlet-test-" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("config documents round-trip for every scenario") {
  for (auto name : kScenarios) {
    CAPTURE(name);
    const auto c = resolve_config(name, nullptr, std::nullopt, nullptr);
    CHECK(c.scenario == name);
    const auto j = to_json(c);
    CHECK(to_json(config_from_json(j)) == j);
  }
}

TEST_CASE("unknown keys and bad values are named by path") {
  CHECK(config_error({{"bogus", 1}}).find("bogus") != std::string::npos);
  CHECK(config_error({{"service", {{"rate_limit", {{"burst", 3}}}}}}).find("service.rate_limit.burst") !=
        std::string::npos);
  CHECK(config_error({{"run", {{"sessions", "many"}}}}).find("run.sessions") != std::string::npos);
  CHECK_FALSE(config_error({{"service", {{"difficulty", "nightmare"}}}}).empty());
  CHECK_FALSE(config_error({{"solver", {{"backend", {{"diagonal", 1.5}}}}}}).empty());
  CHECK_FALSE(config_error({{"service", {{"tiles_per_round", 4}}}}).empty());
  CHECK_FALSE(config_error({{"solver", {{"profile", "robot"}}}}).empty());
  CHECK(config_error({{"solver", {{"profile", {{"preset", "headless"}, {"ip_tag", "tor"}}}}}}).empty());
  CHECK_THROWS_AS(resolve_config("warp", nullptr, std::nullopt, nullptr), ConfigError);
}

TEST_CASE("seed precedence: file, then environment, then flag") {
  const json file = {{"seed", 5}};
  CHECK(resolve_config("campaign", file, std::nullopt, nullptr).seed == 5);
  CHECK(resolve_config("campaign", file, std::nullopt, "7").seed == 7);
  CHECK(resolve_config("campaign", file, 9, "7").seed == 9);
  CHECK(resolve_config("campaign", file, 9, "7").service.seed == 9);
  CHECK_THROWS_AS(resolve_config("campaign", file, std::nullopt, "seven"), ConfigError);
  CHECK(parse_seed("18446744073709551615") == 18446744073709551615ULL);
  CHECK_THROWS_AS(parse_seed("-1"), ConfigError);
}

TEST_CASE("presets layer under the config file") {
  const auto blocking = resolve_config("blocking", nullptr, std::nullopt, nullptr);
  CHECK(blocking.backend.diagonal == 0.965);
  CHECK(blocking.run.sessions == 400);
  const auto custom = resolve_config("blocking", {{"run", {{"sessions", 10}}}}, std::nullopt, nullptr);
  CHECK(custom.run.sessions == 10);
  CHECK(custom.backend.diagonal == 0.965);
  const auto conc = resolve_config("concurrency", nullptr, std::nullopt, nullptr);
  CHECK(conc.run.concurrency == 50);
  CHECK(conc.run.iterations == 10);
  CHECK(conc.service.limits.concurrency_cap == 25);
}

TEST_CASE("published schema covers exactly the config keys") {
  std::ifstream f(fs::path(GAUNTLET_SOURCE_DIR) / "docs" / "config.schema.json");
  REQUIRE(f.good());
  const json schema = json::parse(f);
  std::set<std::string> in_schema;
  schema_paths(schema, "", in_schema);
  std::set<std::string> in_config;
  key_paths(to_json(ExperimentConfig{}), "", in_config);
  // Profile objects may name a preset instead of listing every field.
  in_schema.erase("solver.profile.preset");
  // Maps keyed by category name have no fixed keys.
  CHECK(in_config == in_schema);
}

TEST_CASE("registration site creates accounts only for verified tokens") {
  testing::Rig rig;
  RegistrationSite site(rig.transport, rig.service.config().site_secret);
  CHECK_FALSE(site.submit("a", "pw", "").created);
  CHECK_FALSE(site.submit("b", "pw", std::string(64, 'f')).created);
  const auto backend = make_labeler(resolve_config("campaign", {{"solver", {{"backend", {{"kind", "identity"}}}}}},
                                                   std::nullopt, nullptr));
  solver::DedupCache cache;
  solver::SolverConfig cfg;
  cfg.self_verify = false;
  std::string token;
  for (std::uint64_t i = 0; token.empty() && i < 20; ++i) {
    solver::SolverSession s(cfg, rig.transport, *backend, cache, i, Rng(i), true);
    token = solver::run_simulated(s, rig.clock).token;
  }
  REQUIRE_FALSE(token.empty());
  CHECK(site.submit("c", "pw", token).created);
  const auto replayed = site.submit("d", "pw", token);
  CHECK_FALSE(replayed.created);
  CHECK(replayed.error_codes == std::vector<std::string>{"token-consumed"});
  CHECK(site.accounts() == std::vector<std::string>{"c"});
  CHECK(site.rejected() == 3);
}

TEST_CASE("campaign run writes its outputs and summarizes") {
  auto c = resolve_config("campaign", {{"run", {{"sessions", 25}}}, {"solver", {{"persist_payloads", false}}}},
                          std::nullopt, nullptr);
  c.output_dir = scratch("campaign").string();
  const auto result = run_scenario(c);
  CHECK(result.ok());
  for (const char* f : {"config-echo.json", "records.jsonl", "report.json", "report.csv"})
    CHECK(fs::exists(fs::path(c.output_dir) / f));
  const auto records = solver::read_records(fs::path(c.output_dir) / "records.jsonl");
  CHECK(records.size() == 25);
  const auto summary = summarize_run(c.output_dir);
  CHECK(summary["records"] == 25);
  CHECK(summary["sessions"]["sessions"] == 25);
  std::ifstream echo(fs::path(c.output_dir) / "config-echo.json");
  CHECK(config_from_json(json::parse(echo)).run.sessions == 25);
  fs::remove_all(c.output_dir);
  CHECK_THROWS_AS(summarize_run(c.output_dir), IoError);
}

TEST_CASE("over-network runs match in-process runs") {
  auto c = resolve_config("campaign", {{"run", {{"sessions", 12}}}, {"solver", {{"persist_payloads", false}}}},
                          std::nullopt, nullptr);
  c.output_dir = scratch("local").string();
  (void)run_scenario(c);
  const auto local = solver::read_records(fs::path(c.output_dir) / "records.jsonl");
  fs::remove_all(c.output_dir);
  c.output_dir = scratch("remote").string();
  (void)run_scenario(c, {true});
  const auto remote = solver::read_records(fs::path(c.output_dir) / "records.jsonl");
  fs::remove_all(c.output_dir);
  CHECK(local == remote);
}

TEST_CASE("label-set backends refuse custom categories") {
  auto c = resolve_config("campaign", {{"solver", {{"backend", {{"kind", "multilabel"}}}}}}, std::nullopt, nullptr);
  CHECK_NOTHROW((void)make_labeler(c));
  c.service.categories = CategorySet({"cat", "dog"});
  c.service.synth = tiles::SynthSpec::defaults(2);
  CHECK_THROWS_AS((void)make_labeler(c), ConfigError);
}
