#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gauntlet/core/image.hpp"
#include "gauntlet/core/model.hpp"

// JSON shapes shared by the service API and its clients.
namespace gauntlet::wire {

inline constexpr std::string_view kRateLimitedMessage = "Rate limited or network error. Please retry.";
inline constexpr std::string_view kTooManyRequestsMessage = "Your computer or network has sent too many requests.";

inline constexpr std::string_view kSessionPath = "/api/session";
inline constexpr std::string_view kChallengePath = "/api/challenge";
inline constexpr std::string_view kAnswerPath = "/api/answer";
inline constexpr std::string_view kSiteverifyPath = "/api/siteverify";
inline constexpr std::string_view kLedgerPath = "/api/admin/ledger";

struct Response {
  int status = 200;
  nlohmann::json body;
};

/// Request/response channel to the service: in-process, HTTP, or replayed.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual Response post(std::string_view path, const nlohmann::json& body) = 0;
  virtual Response get(std::string_view path) = 0;
};

struct TileView {
  std::string tile_id;
  GrayImage image;
};

/// What a client sees of one challenge round.
struct ChallengeView {
  std::string challenge_id;
  std::string prompt_text;
  int rounds = 1;
  int round = 1;
  std::vector<TileView> tiles;
  std::int64_t expires_in_ms = 0;
};

/// Serializes a round for clients: tile ids and base64 PGM images only.
nlohmann::json encode_round(const Challenge& challenge, std::size_t round_index, std::int64_t expires_in_ms);
ChallengeView decode_challenge_view(const nlohmann::json& j);

struct VerifyResponse {
  bool success = false;
  std::vector<std::string> error_codes;
};

nlohmann::json to_json(const VerifyResponse& r);
VerifyResponse verify_response_from_json(const nlohmann::json& j);

}  // namespace gauntlet::wire
