#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace gauntlet::solver {

enum class Outcome : std::uint8_t { Pass, Fail, Blocked, Error };
std::string_view to_string(Outcome o);
Outcome outcome_from_string(std::string_view s);

struct StageTimings {
  std::int64_t acquire = 0;
  std::int64_t solve = 0;
  std::int64_t submit_verify = 0;
  [[nodiscard]] std::int64_t sum() const { return acquire + solve + submit_verify; }
  friend bool operator==(const StageTimings&, const StageTimings&) = default;
};

struct TileDecision {
  int round = 1;
  std::string tile_id;
  std::uint64_t phash = 0;
  std::uint32_t labels = 0;  // CategoryMask bits
  bool cached = false;
  bool selected = false;
  friend bool operator==(const TileDecision&, const TileDecision&) = default;
};

/// Everything the solver observed in one session, from its side of the wire.
struct SessionRecord {
  std::uint64_t index = 0;
  std::string session_id;
  std::string challenge_id;
  std::string target;     // parsed from the prompt
  std::string ip_tag;
  int rounds = 0;         // rounds served
  Outcome outcome = Outcome::Error;
  std::string message;    // server text on blocked / error
  StageTimings timings;
  std::int64_t total_ms = 0;
  std::vector<int> selected_per_round;
  std::vector<TileDecision> tiles;
  int backend_calls = 0;
  int cache_hits = 0;
  std::string token;
  bool verified = false;  // siteverify success observed by the solver
  friend bool operator==(const SessionRecord&, const SessionRecord&) = default;
};

nlohmann::json to_json(const SessionRecord& r);
/// Throws FormatError on a malformed record.
SessionRecord record_from_json(const nlohmann::json& j);

/// Appends one JSON object per line.
class JsonlWriter {
 public:
  explicit JsonlWriter(const std::filesystem::path& file);
  void write(const nlohmann::json& j);

 private:
  std::ofstream out_;
};

std::vector<SessionRecord> read_records(const std::filesystem::path& file);
void write_records(const std::filesystem::path& file, const std::vector<SessionRecord>& records);

}  // namespace gauntlet::solver
