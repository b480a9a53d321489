#include "gauntlet/service/api.hpp"

namespace gauntlet::service {

using nlohmann::json;

namespace {

wire::Response error(int status, std::string_view message) { return {status, {{"error", message}}}; }

const json& field(const json& body, const char* name) {
  if (!body.is_object() || !body.contains(name)) throw ApiError(400, std::string("missing field: ") + name);
  return body[name];
}

std::string string_field(const json& body, const char* name) {
  const auto& v = field(body, name);
  if (!v.is_string()) throw ApiError(400, std::string("field must be a string: ") + name);
  return v.get<std::string>();
}

std::vector<std::vector<std::string>> selections_field(const json& body) {
  const auto& v = field(body, "selections");
  try {
    return v.get<std::vector<std::vector<std::string>>>();
  } catch (const json::exception&) {
    throw ApiError(400, "selections must be a list of tile-id lists");
  }
}

}  // namespace

wire::Response ApiRouter::post(std::string_view path, const json& body, Millis now) {
  try {
    if (path == wire::kSessionPath) {
      ClientProfile profile;
      try {
        profile = profile_from_json(field(body, "profile"));
      } catch (const FormatError& e) {
        throw ApiError(400, e.what());
      } catch (const ConfigError& e) {
        throw ApiError(400, e.what());
      }
      return {200, {{"session_id", service_.create_session(profile, now)}}};
    }
    if (path == wire::kChallengePath) {
      return {200, service_.issue_challenge(string_field(body, "session_id"), now)};
    }
    if (path == wire::kAnswerPath) {
      const auto result = service_.answer(string_field(body, "session_id"), string_field(body, "challenge_id"),
                                          selections_field(body), now);
      switch (result.status) {
        case AnswerResult::Status::Pass:
          return {200, {{"status", "pass"}, {"token", result.token}}};
        case AnswerResult::Status::Fail:
          return {200, {{"status", "fail"}}};
        case AnswerResult::Status::Next: {
          json j = result.next_round;
          j["status"] = "next";
          return {200, j};
        }
      }
    }
    if (path == wire::kSiteverifyPath) {
      return {200, wire::to_json(service_.siteverify(string_field(body, "secret"), string_field(body, "response"), now))};
    }
    return error(404, "not found");
  } catch (const ApiError& e) {
    return error(e.status(), e.what());
  }
}

wire::Response ApiRouter::get(std::string_view path, Millis /*now*/) {
  if (path == wire::kLedgerPath) return {200, service_.ledger_json()};
  return error(404, "not found");
}

wire::Response ApiRouter::handle(std::string_view method, std::string_view path, std::string_view body, Millis now) {
  if (method == "GET") return get(path, now);
  if (method != "POST") return error(405, "method not allowed");
  json parsed;
  try {
    parsed = json::parse(body);
  } catch (const json::parse_error&) {
    return error(400, "malformed JSON");
  }
  return post(path, parsed, now);
}

wire::Response InProcessTransport::post(std::string_view path, const json& body) {
  return router_.post(path, body, clock_.now());
}

wire::Response InProcessTransport::get(std::string_view path) { return router_.get(path, clock_.now()); }

}  // namespace gauntlet::service
