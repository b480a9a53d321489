#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gauntlet/core/error.hpp"
#include "gauntlet/core/profile.hpp"
#include "gauntlet/core/wire.hpp"

namespace gauntlet::solver {

/// The service answered 429; `message` is its exact text.
class Blocked : public Error {
 public:
  explicit Blocked(const std::string& message) : Error(message) {}
};

/// Any other non-200 reply or malformed body.
class ProtocolError : public Error {
 public:
  ProtocolError(int status, const std::string& message) : Error(message), status_(status) {}
  [[nodiscard]] int status() const { return status_; }

 private:
  int status_;
};

struct AnswerReply {
  enum class Status : std::uint8_t { Pass, Fail, Next };
  Status status = Status::Fail;
  std::string token;
  std::optional<wire::ChallengeView> next;
};

/// Typed calls over a Transport. Sees only what the wire carries.
class ServiceClient {
 public:
  explicit ServiceClient(wire::Transport& transport) : transport_(transport) {}

  std::string open_session(const ClientProfile& profile);
  wire::ChallengeView fetch_challenge(const std::string& session_id);
  AnswerReply answer(const std::string& session_id, const std::string& challenge_id,
                     const std::vector<std::vector<std::string>>& selections);
  wire::VerifyResponse siteverify(const std::string& secret, const std::string& token);
  nlohmann::json ledger();

 private:
  nlohmann::json checked(const wire::Response& r);
  wire::Transport& transport_;
};

}  // namespace gauntlet::solver
