#include "gauntlet/analysis/dedup.hpp"

#include <algorithm>
#include <map>

#include "gauntlet/core/error.hpp"

namespace gauntlet::analysis {

namespace fs = std::filesystem;

DedupAnalysis dedup_images(std::span<const hashkit::HashedImage> images, int tau) {
  DedupAnalysis a;
  a.tau = tau;
  a.phash = hashkit::cluster_duplicates(images, tau);
  a.exact = hashkit::cluster_exact(images);
  a.partitions_equal = a.phash == a.exact;
  return a;
}

DedupAnalysis dedup_report(const fs::path& dir, int tau) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("corpus directory not readable: " + dir.string());
  std::vector<fs::path> files;
  for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
    if (it->is_regular_file() && it->path().extension() == ".pgm") files.push_back(it->path());
  }
  if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
  std::ranges::sort(files);
  std::vector<hashkit::HashedImage> images;
  images.reserve(files.size());
  for (const auto& f : files) images.push_back(hashkit::hash_image(f.stem().string(), read_pgm(f)));
  return dedup_images(images, tau);
}

hashkit::DuplicateReport report_from_draw_log(const std::vector<tiles::DrawRecord>& log,
                                              const std::function<std::string(std::uint64_t)>& id_of) {
  std::map<std::uint64_t, std::vector<std::string>> by_slot;
  for (const auto& d : log) by_slot[d.slot].push_back(id_of(d.draw_index));
  std::vector<std::vector<std::string>> groups;
  groups.reserve(by_slot.size());
  for (auto& [_, ids] : by_slot) groups.push_back(std::move(ids));
  return hashkit::make_report(log.size(), std::move(groups));
}

nlohmann::json to_json(const DedupAnalysis& a) {
  return {{"tau", a.tau},
          {"total", a.phash.total},
          {"phash_clusters", a.phash.clusters.size()},
          {"phash_redundant", a.phash.redundant},
          {"exact_clusters", a.exact.clusters.size()},
          {"exact_redundant", a.exact.redundant},
          {"partitions_equal", a.partitions_equal},
          {"phash", hashkit::to_json(a.phash)},
          {"exact", hashkit::to_json(a.exact)}};
}

}  // namespace gauntlet::analysis
