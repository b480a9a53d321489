#include "gauntlet/hashkit/cluster.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "gauntlet/core/error.hpp"

namespace gauntlet::hashkit {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned> rank_;
};

DuplicateReport from_union_find(std::span<const HashedImage> images, UnionFind& uf) {
  std::map<std::size_t, std::vector<std::string>> groups;
  for (std::size_t i = 0; i < images.size(); ++i) groups[uf.find(i)].push_back(images[i].id);
  std::vector<std::vector<std::string>> out;
  out.reserve(groups.size());
  for (auto& [root, ids] : groups) out.push_back(std::move(ids));
  return make_report(images.size(), std::move(out));
}

}  // namespace

HashedImage hash_image(std::string id, const GrayImage& image) {
  return {std::move(id), phash64(image), exact_hash(image)};
}

DuplicateReport make_report(std::size_t total, std::vector<std::vector<std::string>> groups) {
  DuplicateReport report;
  report.total = total;
  for (auto& g : groups) {
    if (g.size() < 2) continue;
    std::sort(g.begin(), g.end());
    report.redundant += g.size() - 1;
    report.clusters.push_back(std::move(g));
  }
  std::sort(report.clusters.begin(), report.clusters.end());
  return report;
}

DuplicateReport cluster_duplicates(std::span<const HashedImage> images, int tau) {
  if (tau < 0 || tau > 64) throw ConfigError("tau must be within [0, 64]");
  UnionFind uf(images.size());
  if (tau == 0) {
    std::unordered_map<std::uint64_t, std::size_t> first;
    for (std::size_t i = 0; i < images.size(); ++i) {
      auto [it, inserted] = first.emplace(images[i].phash.bits, i);
      if (!inserted) uf.unite(it->second, i);
    }
  } else {
    // O(n^2); fine for corpora of tens of thousands.
    for (std::size_t i = 0; i < images.size(); ++i) {
      for (std::size_t j = i + 1; j < images.size(); ++j) {
        if (hamming(images[i].phash, images[j].phash) <= tau) uf.unite(i, j);
      }
    }
  }
  return from_union_find(images, uf);
}

DuplicateReport cluster_exact(std::span<const HashedImage> images) {
  UnionFind uf(images.size());
  std::unordered_map<Digest128, std::size_t, Digest128Hash> first;
  for (std::size_t i = 0; i < images.size(); ++i) {
    auto [it, inserted] = first.emplace(images[i].digest, i);
    if (!inserted) uf.unite(it->second, i);
  }
  return from_union_find(images, uf);
}

nlohmann::json to_json(const DuplicateReport& report) {
  return {{"total", report.total}, {"redundant", report.redundant}, {"clusters", report.clusters}};
}

DuplicateReport duplicate_report_from_json(const nlohmann::json& j) {
  DuplicateReport r;
  r.total = j.at("total").get<std::size_t>();
  r.redundant = j.at("redundant").get<std::size_t>();
  r.clusters = j.at("clusters").get<std::vector<std::vector<std::string>>>();
  return r;
}

}  // namespace gauntlet::hashkit
