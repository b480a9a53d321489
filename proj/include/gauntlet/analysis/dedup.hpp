#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gauntlet/hashkit/cluster.hpp"
#include "gauntlet/tiles/pool.hpp"

namespace gauntlet::analysis {

struct DedupAnalysis {
  int tau = 0;
  hashkit::DuplicateReport phash;
  hashkit::DuplicateReport exact;
  bool partitions_equal = false;
};

/// Hashes every .pgm file under `dir` (id = file stem) and clusters by pHash
/// within `tau` and by exact digest. An empty directory gives empty reports.
/// Throws IoError if the directory or a file cannot be read.
DedupAnalysis dedup_report(const std::filesystem::path& dir, int tau);
DedupAnalysis dedup_images(std::span<const hashkit::HashedImage> images, int tau);

/// Ground-truth partition from a pool draw log: draws of the same slot form
/// a cluster. `id_of(draw_index)` names each draw as the corpus does.
hashkit::DuplicateReport report_from_draw_log(const std::vector<tiles::DrawRecord>& log,
                                              const std::function<std::string(std::uint64_t)>& id_of);

nlohmann::json to_json(const DedupAnalysis& a);

}  // namespace gauntlet::analysis
