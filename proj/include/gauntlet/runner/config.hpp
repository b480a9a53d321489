#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gauntlet/classifiers/multilabel.hpp"
#include "gauntlet/service/service.hpp"
#include "gauntlet/solver/solver.hpp"
#include "gauntlet/tiles/plan.hpp"

namespace gauntlet::runner {

inline constexpr std::array<std::string_view, 8> kScenarios = {
    "campaign", "flexibility", "ip-study", "adaptability", "blocking", "concurrency", "dedup", "oracle"};

struct BackendConfig {
  std::string kind = "confusion";  // identity | confusion | multilabel | remote
  double diagonal = 0.88;
  std::map<std::string, double> per_category;  // diagonal overrides by category name
  classifiers::EmissionNoise noise;             // multilabel only
  std::string remote_host = "127.0.0.1";
  int remote_port = 8081;
  std::string remote_path = "/labels";
};

struct RunConfig {
  int sessions = 270;
  int concurrency = 1;
  int iterations = 1;
  Millis session_gap{0};  // idle time after a session before the next one starts
  int trials_per_row = 10000;
  tiles::RepetitionTarget corpus;
  std::vector<ClientProfile> variants;  // per-variant profiles (ip-study, adaptability)
  std::vector<service::DifficultyLevel> difficulties = {service::DifficultyLevel::Moderate,
                                                         service::DifficultyLevel::Difficult};
};

struct NetworkConfig {
  std::string host = "127.0.0.1";
  int port = 0;  // 0 picks a free port
};

/// Everything an experiment needs. Built-in defaults are the campaign setup.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::string scenario = "campaign";
  std::string output_dir = "runs/campaign";
  bool simulated_clock = true;
  service::ServiceConfig service;
  BackendConfig backend;
  int tau = 0;
  solver::Latencies latencies;
  Millis submit_pacing{1000};
  bool persist_payloads = false;
  ClientProfile profile = ClientProfile::regular_browser();
  RunConfig run;
  NetworkConfig network;
};

/// Canonical JSON; parsing it back yields an equal configuration.
nlohmann::json to_json(const ExperimentConfig& config);
/// Strict: unknown keys and wrong types throw ConfigError naming the key path.
/// Missing keys keep their built-in defaults.
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Partial document layered over the defaults for a scenario.
nlohmann::json scenario_preset(std::string_view scenario);

/// defaults < scenario preset < config file < GAUNTLET_SEED < seed override.
/// `file` may be null. Throws ConfigError for an unknown scenario or invalid
/// values anywhere in the result.
ExperimentConfig resolve_config(std::string_view scenario, const nlohmann::json& file,
                                std::optional<std::uint64_t> seed_override, const char* env_seed);

/// Reads a JSON file; throws ConfigError if unreadable or malformed.
nlohmann::json load_json_file(const std::string& path);

/// Checks cross-field constraints (delegates to service validation).
void validate(const ExperimentConfig& config);

std::uint64_t parse_seed(std::string_view text);

}  // namespace gauntlet::runner
