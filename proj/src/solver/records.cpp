#include "gauntlet/solver/records.hpp"

#include <array>

#include "gauntlet/core/error.hpp"

namespace gauntlet::solver {

using nlohmann::json;

namespace {
constexpr std::array<std::string_view, 4> kOutcomes = {"pass", "fail", "blocked", "error"};
}

std::string_view to_string(Outcome o) { return kOutcomes.at(static_cast<std::size_t>(o)); }

Outcome outcome_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kOutcomes.size(); ++i) {
    if (kOutcomes[i] == s) return static_cast<Outcome>(i);
  }
  throw FormatError("unknown outcome: " + std::string(s));
}

json to_json(const SessionRecord& r) {
  json tiles = json::array();
  for (const auto& t : r.tiles) {
    tiles.push_back({{"round", t.round},
                     {"tile_id", t.tile_id},
                     {"phash", t.phash},
                     {"labels", t.labels},
                     {"cached", t.cached},
                     {"selected", t.selected}});
  }
  return {{"index", r.index},
          {"session_id", r.session_id},
          {"challenge_id", r.challenge_id},
          {"target", r.target},
          {"ip_tag", r.ip_tag},
          {"rounds", r.rounds},
          {"outcome", to_string(r.outcome)},
          {"message", r.message},
          {"timings_ms",
           {{"acquire", r.timings.acquire}, {"solve", r.timings.solve}, {"submit_verify", r.timings.submit_verify}}},
          {"total_ms", r.total_ms},
          {"selected_per_round", r.selected_per_round},
          {"tiles", tiles},
          {"backend_calls", r.backend_calls},
          {"cache_hits", r.cache_hits},
          {"token", r.token},
          {"verified", r.verified}};
}

SessionRecord record_from_json(const json& j) {
  try {
    SessionRecord r;
    r.index = j.at("index").get<std::uint64_t>();
    r.session_id = j.at("session_id").get<std::string>();
    r.challenge_id = j.at("challenge_id").get<std::string>();
    r.target = j.at("target").get<std::string>();
    r.ip_tag = j.at("ip_tag").get<std::string>();
    r.rounds = j.at("rounds").get<int>();
    r.outcome = outcome_from_string(j.at("outcome").get<std::string>());
    r.message = j.at("message").get<std::string>();
    const auto& t = j.at("timings_ms");
    r.timings = {t.at("acquire").get<std::int64_t>(), t.at("solve").get<std::int64_t>(),
                 t.at("submit_verify").get<std::int64_t>()};
    r.total_ms = j.at("total_ms").get<std::int64_t>();
    r.selected_per_round = j.at("selected_per_round").get<std::vector<int>>();
    for (const auto& d : j.at("tiles")) {
      r.tiles.push_back({d.at("round").get<int>(), d.at("tile_id").get<std::string>(),
                         d.at("phash").get<std::uint64_t>(), d.at("labels").get<std::uint32_t>(),
                         d.at("cached").get<bool>(), d.at("selected").get<bool>()});
    }
    r.backend_calls = j.at("backend_calls").get<int>();
    r.cache_hits = j.at("cache_hits").get<int>();
    r.token = j.at("token").get<std::string>();
    r.verified = j.at("verified").get<bool>();
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("session record: ") + e.what());
  }
}

JsonlWriter::JsonlWriter(const std::filesystem::path& file) : out_(file, std::ios::binary | std::ios::trunc) {
  if (!out_) throw IoError("cannot write " + file.string());
}

void JsonlWriter::write(const json& j) {
  out_ << j.dump() << '\n';
  if (!out_) throw IoError("write failed");
}

std::vector<SessionRecord> read_records(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot read " + file.string());
  std::vector<SessionRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      out.push_back(record_from_json(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw FormatError(std::string("records: ") + e.what());
    }
  }
  return out;
}

void write_records(const std::filesystem::path& file, const std::vector<SessionRecord>& records) {
  JsonlWriter w(file);
  for (const auto& r : records) w.write(to_json(r));
}

}  // namespace gauntlet::solver
