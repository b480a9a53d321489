#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gauntlet/runner/config.hpp"

namespace gauntlet::runner {

/// One acceptance property a scenario verifies about its own run.
struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct ScenarioResult {
  nlohmann::json report;
  std::vector<Check> checks;
  [[nodiscard]] bool ok() const;
};

struct RunOptions {
  bool over_network = false;  // solver reaches the service over loopback HTTP
};

/// Runs `config.scenario` and writes config-echo.json, records.jsonl,
/// report.json and report.csv into `config.output_dir`. Checks are always
/// evaluated; callers decide whether a failure is fatal.
ScenarioResult run_scenario(const ExperimentConfig& config, const RunOptions& options = {});

/// Re-aggregates a finished run directory from its records.jsonl and
/// report.json. Throws IoError if the directory holds no run.
nlohmann::json summarize_run(const std::filesystem::path& run_dir);

nlohmann::json to_json(const Check& c);

}  // namespace gauntlet::runner
