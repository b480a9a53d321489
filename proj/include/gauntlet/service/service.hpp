#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "gauntlet/core/error.hpp"
#include "gauntlet/core/model.hpp"
#include "gauntlet/core/profile.hpp"
#include "gauntlet/core/wire.hpp"
#include "gauntlet/service/challenge_factory.hpp"
#include "gauntlet/service/difficulty.hpp"
#include "gauntlet/service/hmt.hpp"
#include "gauntlet/service/limiter.hpp"
#include "gauntlet/service/tokens.hpp"
#include "gauntlet/tiles/pool.hpp"

namespace gauntlet::service {

struct ServiceConfig {
  std::uint64_t seed = 1;
  CategorySet categories = CategorySet::defaults();
  tiles::SynthSpec synth = tiles::SynthSpec::defaults(9);
  ShapeConfig shape;
  GradePolicy policy = GradePolicy::flexible();
  DifficultyLevel difficulty = DifficultyLevel::Moderate;
  DifficultyTable difficulty_table;
  RateLimitConfig limits;
  Millis payload_ttl{5000};   // client-side download window
  Millis answer_ttl{120000};  // server-side deadline for the final answer
  Millis session_ttl{120000};
  Millis token_ttl{120000};
  double reuse_probability = 9854.0 / 48330.0;
  bool adaptive = false;
  double flag_threshold = 0.5;
  bool flagged_sessions_earn = true;
  Pico hmt_rate = kDefaultSolveRate;
  std::string site_secret = "0x0000000000000000000000000000000000000000";

  /// Throws ConfigError on any inconsistent knob.
  void validate() const;
};

/// A request the API refuses. `message` is exactly what the client sees.
class ApiError : public Error {
 public:
  ApiError(int status, std::string message) : Error(message), status_(status) {}
  [[nodiscard]] int status() const { return status_; }

 private:
  int status_;
};

struct AnswerResult {
  enum class Status : std::uint8_t { Pass, Fail, Next };
  Status status = Status::Fail;
  std::string token;        // set on Pass
  nlohmann::json next_round;  // set on Next
};

struct FingerprintEntry {
  std::string session_id;
  Millis created_at{0};
  ClientProfile profile;
  double threat = 0.0;
  bool flagged = false;
};

/// Server-side record of a graded challenge; never sent to clients.
struct DecisionRecord {
  std::string session_id;
  std::string challenge_id;
  CategoryId target{};
  PromptType prompt_type = PromptType::Single;
  std::vector<GradeCondition> conditions;
  std::vector<ConditionClass> classes;
  double probability = 0.0;
  bool pass = false;
};

/// The CAPTCHA service. All methods are thread-safe; state is guarded by a
/// single mutex. Refusals throw ApiError and leave state untouched.
class Service {
 public:
  explicit Service(ServiceConfig config);

  /// 429 with the too-many-requests message when the ip window or the
  /// concurrency cap is exhausted.
  std::string create_session(const ClientProfile& profile, Millis now);
  /// Returns the first round as wire JSON.
  nlohmann::json issue_challenge(const std::string& session_id, Millis now);
  /// `selections` holds one list per round served so far; earlier entries
  /// must repeat what was already submitted.
  AnswerResult answer(const std::string& session_id, const std::string& challenge_id,
                      const std::vector<std::vector<std::string>>& selections, Millis now);
  wire::VerifyResponse siteverify(std::string_view secret, std::string_view token, Millis now);

  [[nodiscard]] nlohmann::json ledger_json() const;
  [[nodiscard]] Pico hmt_balance() const;
  [[nodiscard]] std::uint64_t solves() const;
  [[nodiscard]] std::vector<FingerprintEntry> fingerprints() const;
  [[nodiscard]] std::vector<DecisionRecord> decisions() const;
  [[nodiscard]] std::vector<tiles::DrawRecord> pool_draw_log() const;
  [[nodiscard]] std::size_t open_sessions(Millis now) const;
  /// Everything a request can mutate, for before/after comparisons.
  [[nodiscard]] nlohmann::json state_snapshot() const;
  [[nodiscard]] const ServiceConfig& config() const { return config_; }

 private:
  struct Active {
    Challenge challenge;
    std::uint64_t serial = 0;
    std::size_t next_round = 0;
    std::vector<std::vector<std::string>> answered;
    Millis deadline{0};
  };
  struct Session {
    std::string id;
    ClientProfile profile;
    Millis created_at{0};
    std::optional<Millis> last_submit_at;
    std::unique_ptr<Active> active;
    bool verified = false;
    bool closed = false;
    bool flagged = false;
    double threat = 0.0;
  };

  Session& find_session(const std::string& id);
  void close(Session& s);
  [[nodiscard]] std::size_t open_sessions_locked(Millis now) const;
  void require_ip(IpTag tag, Millis now) const;

  ServiceConfig config_;
  mutable std::mutex mu_;
  ChallengeFactory factory_;
  tiles::TilePool pool_;
  IpWindow ip_window_;
  TokenMinter minter_;
  TokenStore tokens_;
  HmtLedger ledger_;
  Rng session_ids_;
  Rng challenge_root_;
  Rng grade_root_;
  std::uint64_t challenge_serial_ = 0;
  std::unordered_map<std::string, Session> sessions_;
  std::set<std::string> open_;
  std::vector<FingerprintEntry> fingerprints_;
  std::vector<DecisionRecord> decisions_;
};

}  // namespace gauntlet::service
