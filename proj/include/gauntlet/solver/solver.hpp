#pragma once

#include <filesystem>
#include <optional>

#include "gauntlet/classifiers/labeler.hpp"
#include "gauntlet/core/clock.hpp"
#include "gauntlet/core/model.hpp"
#include "gauntlet/core/profile.hpp"
#include "gauntlet/solver/cache.hpp"
#include "gauntlet/solver/client.hpp"
#include "gauntlet/solver/records.hpp"

namespace gauntlet::solver {

/// Latencies injected in simulated-clock mode, standing in for browser
/// automation and inference time.
struct Latencies {
  Millis page{8000};      // checkbox click to challenge request
  Millis download{1000};  // payload download after the challenge reply
  Millis solve{3790};     // classification, per round
  Millis submit{5970};    // clicking and submitting, per round
  static Latencies none() { return {Millis{0}, Millis{0}, Millis{0}, Millis{0}}; }
  friend bool operator==(const Latencies&, const Latencies&) = default;
};

struct SolverConfig {
  CategorySet categories = CategorySet::defaults();
  ClientProfile profile = ClientProfile::regular_browser();
  Latencies latencies;
  Millis submit_pacing{1000};  // minimum spacing between own answer submissions
  bool self_verify = true;     // call siteverify after a pass
  std::string site_secret = "0x0000000000000000000000000000000000000000";
  std::optional<std::filesystem::path> payload_dir;  // persist served tiles as PGM
};

/// Target category named by a prompt such as
/// "Please click each image containing a truck". Throws FormatError.
CategoryId parse_prompt(std::string_view prompt, const CategorySet& categories);

/// One attack session: acquire, solve, submit and verify, as an explicit
/// state machine so many sessions can be interleaved on one logical clock.
///
/// `step(now)` does the work due at `now` and returns when it wants to run
/// next, or nullopt once the record is final. With `simulated` false no
/// latency is injected and stage times are whatever elapsed between steps.
class SolverSession {
 public:
  SolverSession(const SolverConfig& config, wire::Transport& transport, const classifiers::Labeler& labeler,
                DedupCache& cache, std::uint64_t index, Rng rng, bool simulated);

  std::optional<Millis> step(Millis now);
  [[nodiscard]] bool done() const { return state_ == State::Done; }
  [[nodiscard]] const SessionRecord& record() const { return record_; }

 private:
  enum class State : std::uint8_t { Start, Fetch, Solve, SubmitWait, Submit, Done };
  enum class Stage : std::uint8_t { Acquire, Solve, Submit };

  void enter(Stage stage, Millis now);
  std::optional<Millis> finish(Outcome outcome, std::string message, Millis now);
  Millis after(Millis now, Millis latency) const { return simulated_ ? now + latency : now; }
  void persist(const wire::ChallengeView& view) const;
  void classify_round(const wire::ChallengeView& view);

  const SolverConfig& config_;
  ServiceClient client_;
  const classifiers::Labeler& labeler_;
  DedupCache& cache_;
  Rng rng_;
  bool simulated_;

  State state_ = State::Start;
  Stage stage_ = Stage::Acquire;
  Millis started_{0};
  Millis mark_{0};
  Millis received_at_{0};
  std::optional<Millis> last_submit_;
  wire::ChallengeView view_;
  CategoryId target_{};
  std::vector<std::vector<std::string>> selections_;
  SessionRecord record_;
};

/// Runs a session to completion on a logical clock, advancing it to each wake time.
SessionRecord run_simulated(SolverSession& session, SimClock& clock);
/// Runs a session against real time, sleeping until each wake time.
SessionRecord run_wall(SolverSession& session, const Clock& clock);

}  // namespace gauntlet::solver
