#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gauntlet/core/error.hpp"
#include "gauntlet/core/rng.hpp"
#include "gauntlet/hashkit/cluster.hpp"
#include "gauntlet/hashkit/digest.hpp"
#include "gauntlet/hashkit/phash.hpp"
#include "gauntlet/tiles/synth.hpp"

using namespace gauntlet;
using namespace gauntlet::hashkit;

namespace {

GrayImage noise(Rng& rng, int size = 64) {
  GrayImage img(size, size);
  for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(rng.below(256));
  return img;
}

}  // namespace

TEST_CASE("md5 matches RFC 1321 vectors") {
  CHECK(md5("").hex() == "d41d8cd98f00b204e9800998ecf8427e");
  CHECK(md5("abc").hex() == "900150983cd24fb0d6963f7d28e17f72");
  CHECK(md5("message digest").hex() == "f96b697d7cb7938d525a2f31aaf161d0");
  GrayImage img(2, 2, 7);
  CHECK(exact_hash(img) == md5(encode_pgm(img)));
}

TEST_CASE("box downscale averages exact blocks") {
  GrayImage img(64, 64);
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x) img.at(x, y) = static_cast<std::uint8_t>((x * 3 + y * 5) % 251);
  const auto small = box_downscale(img, 32, 32);
  REQUIRE(small.size() == 32 * 32);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x) {
      const double mean = (img.at(2 * x, 2 * y) + img.at(2 * x + 1, 2 * y) + img.at(2 * x, 2 * y + 1) +
                           img.at(2 * x + 1, 2 * y + 1)) /
                          4.0;
      CHECK(small[static_cast<std::size_t>(y) * 32 + x] == doctest::Approx(mean));
    }
}

TEST_CASE("dct matches a direct evaluation of the orthonormal transform") {
  Rng rng(12);
  std::vector<double> block(32 * 32);
  for (auto& v : block) v = rng.uniform() * 255.0;
  const auto got = low_frequency_dct(block);
  for (int u = 0; u < 8; ++u)
    for (int v = 0; v < 8; ++v) {
      double sum = 0;
      for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x)
          sum += block[static_cast<std::size_t>(y) * 32 + x] * std::cos((2 * x + 1) * v * std::numbers::pi / 64) *
                 std::cos((2 * y + 1) * u * std::numbers::pi / 64);
      const double cu = u == 0 ? std::sqrt(1.0 / 32) : std::sqrt(2.0 / 32);
      const double cv = v == 0 ? std::sqrt(1.0 / 32) : std::sqrt(2.0 / 32);
      CHECK(got[static_cast<std::size_t>(u) * 8 + v] == doctest::Approx(cu * cv * sum).epsilon(1e-9));
    }
}

TEST_CASE("phash basics") {
  CHECK(phash64(GrayImage(64, 64, 0)).bits == 0);
  // A nonzero constant has only DC above the median of 63 zeros.
  for (int v : {1, 77, 200, 255}) CHECK(phash64(GrayImage(64, 64, static_cast<std::uint8_t>(v))).bits == 1);
  CHECK_THROWS_AS(phash64(GrayImage(16, 16, 1)), FormatError);
  Rng rng(3);
  const auto img = noise(rng);
  const GrayImage copy = img;
  CHECK(hamming(phash64(img), phash64(copy)) == 0);
  // Inverting the image flips every coefficient except DC; most bits flip.
  GrayImage inverted = img;
  for (auto& p : inverted.pixels()) p = static_cast<std::uint8_t>(255 - p);
  CHECK(hamming(phash64(img), phash64(inverted)) > 48);
}

TEST_CASE("phash of independent noise is about half the bits apart") {
  Rng rng(77);
  double total = 0;
  for (int i = 0; i < 300; ++i) total += hamming(phash64(noise(rng)), phash64(noise(rng)));
  const double mean = total / 300;
  CHECK(mean >= 24);
  CHECK(mean <= 40);
}

TEST_CASE("clustering by phash and by digest") {
  const auto spec = tiles::SynthSpec::defaults(9);
  std::vector<HashedImage> images;
  const auto a = tiles::synth_tile(category_at(0), 1, spec);
  const auto b = tiles::synth_tile(category_at(1), 2, spec);
  const auto c = tiles::synth_tile(category_at(2), 3, spec);
  images.push_back(hash_image("a1", a));
  images.push_back(hash_image("b1", b));
  images.push_back(hash_image("a2", a));
  images.push_back(hash_image("c1", c));
  images.push_back(hash_image("a3", a));
  images.push_back(hash_image("b2", b));
  const auto ph = cluster_duplicates(images, 0);
  const auto ex = cluster_exact(images);
  CHECK(ph == ex);
  CHECK(ph.total == 6);
  CHECK(ph.redundant == 3);
  CHECK(ph.clusters == std::vector<std::vector<std::string>>{{"a1", "a2", "a3"}, {"b1", "b2"}});
  CHECK(duplicate_report_from_json(to_json(ph)) == ph);
  // tau = 64 joins everything.
  CHECK(cluster_duplicates(images, 64).clusters.size() == 1);
}

TEST_CASE("tau clustering is transitive") {
  std::vector<HashedImage> images = {{"x", {0b0000}, {}}, {"y", {0b0001}, {}}, {"z", {0b0011}, {}},
                                     {"w", {0xF0F0}, {}}};
  const auto r = cluster_duplicates(images, 1);
  CHECK(r.clusters == std::vector<std::vector<std::string>>{{"x", "y", "z"}});
  CHECK(cluster_duplicates(images, 0).clusters.empty());
}
