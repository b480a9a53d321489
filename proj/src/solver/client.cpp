#include "gauntlet/solver/client.hpp"

namespace gauntlet::solver {

using nlohmann::json;

json ServiceClient::checked(const wire::Response& r) {
  auto message = [&] {
    return r.body.is_object() && r.body.contains("error") && r.body["error"].is_string()
               ? r.body["error"].get<std::string>()
               : r.body.dump();
  };
  if (r.status == 429) throw Blocked(message());
  if (r.status != 200) throw ProtocolError(r.status, message());
  return r.body;
}

std::string ServiceClient::open_session(const ClientProfile& profile) {
  const auto body = checked(transport_.post(wire::kSessionPath, {{"profile", to_json(profile)}}));
  if (!body.contains("session_id") || !body["session_id"].is_string()) {
    throw ProtocolError(200, "session reply lacks session_id");
  }
  return body["session_id"].get<std::string>();
}

wire::ChallengeView ServiceClient::fetch_challenge(const std::string& session_id) {
  return wire::decode_challenge_view(checked(transport_.post(wire::kChallengePath, {{"session_id", session_id}})));
}

AnswerReply ServiceClient::answer(const std::string& session_id, const std::string& challenge_id,
                                  const std::vector<std::vector<std::string>>& selections) {
  const auto body = checked(transport_.post(
      wire::kAnswerPath, {{"session_id", session_id}, {"challenge_id", challenge_id}, {"selections", selections}}));
  const auto status = body.value("status", std::string{});
  AnswerReply reply;
  if (status == "pass") {
    reply.status = AnswerReply::Status::Pass;
    reply.token = body.value("token", std::string{});
    if (reply.token.empty()) throw ProtocolError(200, "pass without token");
  } else if (status == "fail") {
    reply.status = AnswerReply::Status::Fail;
  } else if (status == "next") {
    reply.status = AnswerReply::Status::Next;
    reply.next = wire::decode_challenge_view(body);
  } else {
    throw ProtocolError(200, "unknown answer status: " + status);
  }
  return reply;
}

wire::VerifyResponse ServiceClient::siteverify(const std::string& secret, const std::string& token) {
  return wire::verify_response_from_json(
      checked(transport_.post(wire::kSiteverifyPath, {{"secret", secret}, {"response", token}})));
}

json ServiceClient::ledger() { return checked(transport_.get(wire::kLedgerPath)); }

}  // namespace gauntlet::solver
