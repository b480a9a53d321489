#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gauntlet/hashkit/digest.hpp"
#include "gauntlet/hashkit/phash.hpp"

namespace gauntlet::hashkit {

struct HashedImage {
  std::string id;
  PHash64 phash;
  Digest128 digest;
};

HashedImage hash_image(std::string id, const GrayImage& image);

/// Groups of two or more images considered duplicates.
///
/// Clusters are canonical: ids sorted within a cluster, clusters ordered by
/// their first id, so equal partitions compare equal.
struct DuplicateReport {
  std::size_t total = 0;
  std::size_t redundant = 0;  // sum over clusters of (size - 1)
  std::vector<std::vector<std::string>> clusters;

  friend bool operator==(const DuplicateReport&, const DuplicateReport&) = default;
};

/// Union-find over pHash: two images join when their Hamming distance is at
/// most `tau` (0..64). tau == 0 buckets equal hashes; larger tau compares all pairs.
DuplicateReport cluster_duplicates(std::span<const HashedImage> images, int tau);

/// Partition by identical 128-bit digest.
DuplicateReport cluster_exact(std::span<const HashedImage> images);

/// {"total", "redundant", "clusters": [[id, ...], ...]}
nlohmann::json to_json(const DuplicateReport& report);
DuplicateReport duplicate_report_from_json(const nlohmann::json& j);

/// Builds a canonical report from raw groups (singletons are dropped).
DuplicateReport make_report(std::size_t total, std::vector<std::vector<std::string>> groups);

}  // namespace gauntlet::hashkit
