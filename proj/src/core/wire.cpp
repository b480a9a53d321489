#include "gauntlet/core/wire.hpp"

#include "gauntlet/core/base64.hpp"
#include "gauntlet/core/error.hpp"

namespace gauntlet::wire {

nlohmann::json encode_round(const Challenge& challenge, std::size_t round_index, std::int64_t expires_in_ms) {
  nlohmann::json tiles = nlohmann::json::array();
  for (const auto& tile : challenge.rounds.at(round_index).tiles) {
    tiles.push_back({{"tile_id", tile.tile_id}, {"image", base64_encode(encode_pgm(*tile.bitmap))}});
  }
  return {
      {"challenge_id", challenge.challenge_id},
      {"prompt_text", challenge.prompt_text},
      {"rounds", challenge.rounds.size()},
      {"round", round_index + 1},
      {"tiles", std::move(tiles)},
      {"expires_in_ms", expires_in_ms},
  };
}

ChallengeView decode_challenge_view(const nlohmann::json& j) {
  try {
    ChallengeView view;
    view.challenge_id = j.at("challenge_id").get<std::string>();
    view.prompt_text = j.at("prompt_text").get<std::string>();
    view.rounds = j.at("rounds").get<int>();
    view.round = j.value("round", 1);
    view.expires_in_ms = j.at("expires_in_ms").get<std::int64_t>();
    for (const auto& t : j.at("tiles")) {
      view.tiles.push_back({t.at("tile_id").get<std::string>(),
                            decode_pgm(base64_decode(t.at("image").get<std::string>()))});
    }
    return view;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("challenge payload: ") + e.what());
  }
}

nlohmann::json to_json(const VerifyResponse& r) {
  nlohmann::json j = {{"success", r.success}};
  if (!r.success) j["error-codes"] = r.error_codes;
  return j;
}

VerifyResponse verify_response_from_json(const nlohmann::json& j) {
  VerifyResponse r;
  r.success = j.value("success", false);
  if (j.contains("error-codes")) r.error_codes = j["error-codes"].get<std::vector<std::string>>();
  return r;
}

}  // namespace gauntlet::wire
