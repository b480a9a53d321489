#include "gauntlet/runner/harness.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

#include "gauntlet/classifiers/confusion.hpp"
#include "gauntlet/classifiers/remote.hpp"
#include "gauntlet/solver/http_transport.hpp"
#include "gauntlet/solver/scheduler.hpp"

namespace gauntlet::runner {

Runtime::Runtime(service::ServiceConfig service_config, bool simulated_clock, bool over_network,
                 const NetworkConfig& network)
    : simulated_(simulated_clock), service_(std::move(service_config)), router_(service_) {
  if (over_network) {
    server_ = std::make_unique<service::HttpServer>(router_, clock());
    const int port = server_->start(network.host, network.port);
    transport_ = std::make_unique<solver::HttpTransport>(network.host, port);
  } else {
    transport_ = std::make_unique<service::InProcessTransport>(router_, clock());
  }
}

Runtime::~Runtime() {
  if (server_) server_->stop();
}

const Clock& Runtime::clock() const {
  if (simulated_) return sim_;
  return wall_;
}

void Runtime::wait(Millis d) {
  if (simulated_) {
    sim_.advance(d);
  } else {
    std::this_thread::sleep_for(d);
  }
}

classifiers::ConfusionMatrix make_matrix(const ExperimentConfig& c) {
  const std::size_t k = c.service.categories.size();
  if (c.backend.kind == "identity") return classifiers::ConfusionMatrix::identity(k);
  std::vector<double> diagonals(k, c.backend.diagonal);
  for (const auto& [name, d] : c.backend.per_category) diagonals[index_of(c.service.categories.require(name))] = d;
  return classifiers::ConfusionMatrix::with_diagonals(diagonals);
}

std::shared_ptr<const classifiers::Labeler> make_labeler(const ExperimentConfig& c) {
  const auto& spec = c.service.synth;
  if (c.backend.kind == "identity" || c.backend.kind == "confusion") {
    return std::make_shared<classifiers::ConfusionBackend>(make_matrix(c), classifiers::MatchedFilter(spec));
  }
  if (c.service.categories.names() != CategorySet::defaults().names()) {
    throw ConfigError("label-set backends ship synonyms for the default categories only");
  }
  std::shared_ptr<const classifiers::LabelSource> source;
  if (c.backend.kind == "multilabel") {
    source = std::make_shared<classifiers::MultiLabelBackend>(spec, classifiers::EmissionSets::defaults(),
                                                              c.backend.noise);
  } else {
    source = std::make_shared<classifiers::RemoteLabelSource>(c.backend.remote_host, c.backend.remote_port,
                                                              c.backend.remote_path);
  }
  return std::make_shared<classifiers::MappedLabeler>(source, classifiers::LabelMapping::defaults());
}

bool oracle_applies(const ExperimentConfig& c) { return c.backend.kind == "identity" || c.backend.kind == "confusion"; }

solver::SolverConfig make_solver_config(const ExperimentConfig& c, const ClientProfile& profile, bool self_verify) {
  solver::SolverConfig s;
  s.categories = c.service.categories;
  s.profile = profile;
  s.latencies = c.latencies;
  s.submit_pacing = c.submit_pacing;
  s.self_verify = self_verify;
  s.site_secret = c.service.site_secret;
  return s;
}

analysis::ShapeDistribution shape_for(const service::ServiceConfig& s, const ClientProfile& profile) {
  auto knobs = s.difficulty_table.at(s.difficulty);
  if (s.adaptive) knobs = service::escalate(knobs, service::threat_score(profile));
  analysis::ShapeDistribution shape;
  shape.tiles_per_round = s.shape.tiles_per_round;
  const double total = std::accumulate(s.shape.target_weights.begin(), s.shape.target_weights.end(), 0.0);
  for (double w : s.shape.target_weights) shape.target_weights.push_back(w / total);
  shape.double_prompt_probability = knobs.double_prompt_probability;
  shape.flexibility_scale = knobs.flexibility_scale;
  return shape;
}

double oracle_value(const ExperimentConfig& c, const service::ServiceConfig& s, const ClientProfile& profile) {
  return analysis::expected_campaign_accuracy(make_matrix(c), s.policy, shape_for(s, profile));
}

std::vector<solver::SessionRecord> run_sessions(Runtime& rt, const solver::SolverConfig& solver_config,
                                                const classifiers::Labeler& labeler, solver::DedupCache& cache,
                                                const SessionBatch& batch, std::uint64_t seed,
                                                const SessionHook& hook) {
  const Rng root = Rng::stream(seed, "solver");
  std::vector<solver::SessionRecord> records;
  std::mutex records_mu;
  std::atomic<int> next{0};
  auto make = [&](int i) {
    const std::uint64_t index = batch.first_index + static_cast<std::uint64_t>(i);
    return std::make_unique<solver::SolverSession>(solver_config, rt.transport(), labeler, cache, index,
                                                   root.fork(index), rt.simulated());
  };
  auto finish = [&](solver::SolverSession& s, Millis now) {
    auto record = s.record();
    if (hook) hook(record, now);
    std::lock_guard lock(records_mu);
    records.push_back(std::move(record));
  };

  const int workers = std::max(1, std::min(batch.concurrency, batch.count));
  if (rt.simulated()) {
    solver::EventScheduler scheduler;
    const Millis start = rt.clock().now();
    for (int w = 0; w < workers && batch.count > 0; ++w) {
      scheduler.at(start, [&, current = std::shared_ptr<solver::SolverSession>()](Millis now) mutable
                   -> std::optional<Millis> {
        if (!current) {
          const int i = next++;
          if (i >= batch.count) return std::nullopt;
          current = make(i);
        }
        if (auto wake = current->step(now)) return wake;
        finish(*current, now);
        current.reset();
        if (next >= batch.count) return std::nullopt;
        return now + batch.gap;
      });
    }
    scheduler.run(*rt.sim_clock());
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&] {
        for (int i = next++; i < batch.count; i = next++) {
          auto session = make(i);
          solver::run_wall(*session, rt.clock());
          finish(*session, rt.clock().now());
          if (next < batch.count) std::this_thread::sleep_for(batch.gap);
        }
      });
    }
    for (auto& t : threads) t.join();
  }
  std::ranges::sort(records, {}, &solver::SessionRecord::index);
  return records;
}

}  // namespace gauntlet::runner
