// gauntlet: run the CAPTCHA service, attack it, and summarize runs.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "gauntlet/runner/config.hpp"
#include "gauntlet/runner/scenarios.hpp"
#include "gauntlet/service/api.hpp"
#include "gauntlet/service/http_server.hpp"

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

using gauntlet::runner::ExperimentConfig;

ExperimentConfig load(const std::string& scenario, const std::string& config_file,
                      const std::optional<std::string>& seed) {
  nlohmann::json file = nullptr;
  if (!config_file.empty()) file = gauntlet::runner::load_json_file(config_file);
  std::optional<std::uint64_t> seed_override;
  if (seed) seed_override = gauntlet::runner::parse_seed(*seed);
  return gauntlet::runner::resolve_config(scenario, file, seed_override, std::getenv("GAUNTLET_SEED"));
}

int serve(const std::string& config_file, int port_flag) {
  auto config = load("campaign", config_file, std::nullopt);
  gauntlet::SteadyClock clock;
  gauntlet::service::Service service(config.service);
  gauntlet::service::ApiRouter router(service);
  gauntlet::service::HttpServer server(router, clock);
  const int port = port_flag >= 0 ? port_flag : (config.network.port > 0 ? config.network.port : 8080);
  std::cout << "serving on " << config.network.host << ":" << port << std::endl;
  server.run(config.network.host, port);
  return 0;
}

int attack(const std::string& scenario, const std::string& config_file, const std::optional<std::string>& seed,
           const std::string& out, bool check, bool over_network) {
  auto config = load(scenario, config_file, seed);
  if (!out.empty()) config.output_dir = out;
  const auto result = gauntlet::runner::run_scenario(config, {over_network});
  for (const auto& c : result.checks) {
    std::cout << (c.ok ? "ok    " : "FAIL  ") << c.name;
    if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << "\n";
  }
  std::cout << "wrote " << config.output_dir << "/{config-echo.json,records.jsonl,report.json,report.csv}\n";
  return check && !result.ok() ? kExitCheckFailed : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Image CAPTCHA service and classifier-driven solver testbed"};
  app.require_subcommand(1);

  std::string config_file;
  int port = -1;
  auto* serve_cmd = app.add_subcommand("serve", "Run the CAPTCHA service over HTTP (wall clock)");
  serve_cmd->add_option("--config", config_file, "JSON config file")->check(CLI::ExistingFile);
  serve_cmd->add_option("--port", port, "Port to bind (overrides network.port)");

  std::string scenario;
  std::optional<std::string> seed;
  std::string out;
  bool check = false;
  bool over_network = false;
  auto* attack_cmd = app.add_subcommand("attack", "Run an experiment scenario");
  std::vector<std::string> names(gauntlet::runner::kScenarios.begin(), gauntlet::runner::kScenarios.end());
  attack_cmd->add_option("scenario", scenario, "Scenario name")->required()->check(CLI::IsMember(names));
  attack_cmd->add_option("--config", config_file, "JSON config file")->check(CLI::ExistingFile);
  attack_cmd->add_option("--seed", seed, "Seed (overrides config and GAUNTLET_SEED)");
  attack_cmd->add_option("--out", out, "Output directory (overrides output_dir)");
  attack_cmd->add_flag("--check", check, "Exit nonzero when a scenario check fails");
  attack_cmd->add_flag("--over-network", over_network, "Reach the service over loopback HTTP");

  std::string run_dir;
  auto* report_cmd = app.add_subcommand("report", "Summarize a finished run directory");
  report_cmd->add_option("run-dir", run_dir, "Directory written by attack")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve_cmd) return serve(config_file, port);
    if (*attack_cmd) return attack(scenario, config_file, seed, out, check, over_network);
    std::cout << gauntlet::runner::summarize_run(run_dir).dump(2) << "\n";
    return 0;
  } catch (const gauntlet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
