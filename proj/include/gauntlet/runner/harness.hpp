#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "gauntlet/analysis/oracle.hpp"
#include "gauntlet/classifiers/labeler.hpp"
#include "gauntlet/runner/config.hpp"
#include "gauntlet/service/api.hpp"
#include "gauntlet/service/http_server.hpp"

namespace gauntlet::runner {

/// One service instance and the transport a solver uses to reach it:
/// in-process by default, or a loopback HTTP server.
class Runtime {
 public:
  Runtime(service::ServiceConfig service_config, bool simulated_clock, bool over_network,
          const NetworkConfig& network = {});
  ~Runtime();
  Runtime(const Runtime&) = delete;
  Runtime& operator=(const Runtime&) = delete;

  [[nodiscard]] service::Service& service() { return service_; }
  [[nodiscard]] wire::Transport& transport() { return *transport_; }
  [[nodiscard]] const Clock& clock() const;
  [[nodiscard]] SimClock* sim_clock() { return simulated_ ? &sim_ : nullptr; }
  [[nodiscard]] bool simulated() const { return simulated_; }
  /// Moves logical time forward, or sleeps in wall-clock mode.
  void wait(Millis d);

 private:
  bool simulated_;
  SimClock sim_;
  SteadyClock wall_;
  service::Service service_;
  service::ApiRouter router_;
  std::unique_ptr<service::HttpServer> server_;
  std::unique_ptr<wire::Transport> transport_;
};

/// Confusion matrix implied by the backend settings (identity for "identity").
classifiers::ConfusionMatrix make_matrix(const ExperimentConfig& config);
/// Throws ConfigError when the backend cannot serve the configured categories.
std::shared_ptr<const classifiers::Labeler> make_labeler(const ExperimentConfig& config);
/// Whether the oracle models this backend (per-tile confusion draws).
bool oracle_applies(const ExperimentConfig& config);

solver::SolverConfig make_solver_config(const ExperimentConfig& config, const ClientProfile& profile,
                                        bool self_verify);

/// Challenge-shape distribution the service draws from, for a profile.
analysis::ShapeDistribution shape_for(const service::ServiceConfig& service, const ClientProfile& profile);
/// Oracle pass probability for the configured backend against a service.
double oracle_value(const ExperimentConfig& config, const service::ServiceConfig& service,
                    const ClientProfile& profile);

struct SessionBatch {
  int count = 0;
  int concurrency = 1;
  Millis gap{0};              // idle time per worker between sessions
  std::uint64_t first_index = 0;
};

/// Called when a session ends, at the time it ends.
using SessionHook = std::function<void(solver::SessionRecord&, Millis now)>;

/// Runs a batch of sessions and returns their records ordered by index.
/// Simulated mode interleaves workers on the logical clock (deterministic);
/// wall mode runs one thread per worker.
std::vector<solver::SessionRecord> run_sessions(Runtime& rt, const solver::SolverConfig& solver_config,
                                                const classifiers::Labeler& labeler, solver::DedupCache& cache,
                                                const SessionBatch& batch, std::uint64_t seed,
                                                const SessionHook& hook = {});

}  // namespace gauntlet::runner
