#include <doctest.h>

#include "gauntlet/classifiers/confusion.hpp"
#include "gauntlet/classifiers/features.hpp"
#include "gauntlet/classifiers/labels.hpp"
#include "gauntlet/classifiers/multilabel.hpp"
#include "gauntlet/classifiers/remote.hpp"
#include "gauntlet/core/error.hpp"
#include "gauntlet/tiles/synth.hpp"

using namespace gauntlet;
using namespace gauntlet::classifiers;

TEST_CASE("matched filter recovers the synthesized class") {
  const auto spec = tiles::SynthSpec::defaults(9);
  const MatchedFilter filter(spec);
  CHECK(filter.size() == 9);
  for (std::uint64_t seed = 0; seed < 60; ++seed)
    for (std::size_t k = 0; k < 9; ++k) CHECK(filter.detect(tiles::synth_tile(category_at(k), seed, spec)) == category_at(k));
  CHECK_THROWS_AS((void)filter.detect(GrayImage(32, 32)), FormatError);
}

TEST_CASE("confusion matrix validation and factories") {
  CHECK_THROWS_AS(ConfusionMatrix({{1.0, 0.0}}), ConfigError);
  CHECK_THROWS_AS(ConfusionMatrix({{0.5, 0.6}, {0.0, 1.0}}), ConfigError);
  CHECK_THROWS_AS(ConfusionMatrix({{1.5, -0.5}, {0.0, 1.0}}), ConfigError);
  const auto u = ConfusionMatrix::uniform_diagonal(9, 0.88);
  CHECK(u.at(3, 3) == doctest::Approx(0.88));
  CHECK(u.at(3, 4) == doctest::Approx(0.12 / 8));
  const auto w = ConfusionMatrix::with_diagonals({0.5, 0.9, 1.0});
  CHECK(w.at(0, 1) == doctest::Approx(0.25));
  CHECK(w.at(2, 0) == 0.0);
  CHECK(ConfusionMatrix::identity(4).at(2, 2) == 1.0);
}

TEST_CASE("confusion sampling follows the row") {
  const auto m = ConfusionMatrix::uniform_diagonal(5, 0.7);
  Rng rng(10);
  std::array<int, 5> counts{};
  const int n = 50000;
  for (int i = 0; i < n; ++i) ++counts[index_of(m.sample(category_at(1), rng))];
  CHECK(static_cast<double>(counts[1]) / n == doctest::Approx(0.7).epsilon(0.02));
  CHECK(static_cast<double>(counts[4]) / n == doctest::Approx(0.075).epsilon(0.06));
}

TEST_CASE("identity backend labels exactly the true class") {
  const auto spec = tiles::SynthSpec::defaults(9);
  const ConfusionBackend backend(ConfusionMatrix::identity(9), MatchedFilter(spec));
  Rng rng(1);
  for (std::size_t k = 0; k < 9; ++k) {
    const auto mask = backend.label(tiles::synth_tile(category_at(k), 99, spec), rng);
    CHECK(mask == CategoryMask::of(category_at(k)));
  }
}

TEST_CASE("label sets are unique ignoring case") {
  LabelSet s;
  CHECK(s.add({"Truck", 0.9}));
  CHECK_FALSE(s.add({"truck", 0.5}));
  CHECK(s.size() == 1);
  CHECK(s.contains("TRUCK"));
  CHECK_THROWS_AS(LabelSet({{"a", 1.2}}), ConfigError);
  CHECK_THROWS_AS(LabelSet({{"a", 0.2}, {"A", 0.3}}), ConfigError);
}

TEST_CASE("synonym mapping decides target matches") {
  const auto map = LabelMapping::defaults();
  const auto cats = CategorySet::defaults();
  LabelSet tow({{"Tow Truck", 0.8}, {"Road", 0.9}});
  CHECK(match_target(tow, map, cats.require("truck")));
  CHECK_FALSE(match_target(tow, map, cats.require("car")));
  LabelSet plane({{"Aeroplane", 0.9}, {"Floatplane", 0.7}});
  const auto mask = matched_categories(plane, map);
  CHECK(mask.contains(cats.require("airplane")));
  CHECK(mask.contains(cats.require("seaplane")));
  CHECK_FALSE(mask.contains(cats.require("boat")));
  CHECK(matched_categories(LabelSet({{"Person", 1.0}}), map).empty());
  CHECK_THROWS_AS(LabelMapping({{"a"}, {}}), ConfigError);
}

TEST_CASE("multilabel backend emits the class synonyms and distractors") {
  const auto spec = tiles::SynthSpec::defaults(9);
  const auto cats = CategorySet::defaults();
  auto clean = std::make_shared<MultiLabelBackend>(spec, EmissionSets::defaults(), EmissionNoise{0.0, 0.0, 0.0});
  const MappedLabeler labeler(clean, LabelMapping::defaults());
  Rng rng(4);
  const auto truck = cats.require("truck");
  const auto img = tiles::synth_tile(truck, 5, spec);
  CHECK(labeler.label(img, rng).contains(truck));
  const auto labels = clean->labels(img, rng);
  CHECK(labels.contains("Tow Truck"));
  CHECK_FALSE(labels.contains("Person"));

  auto noisy = std::make_shared<MultiLabelBackend>(spec, EmissionSets::defaults(), EmissionNoise{1.0, 1.0, 0.0});
  const auto only_distractors = noisy->labels(img, rng);
  CHECK(only_distractors.contains("Person"));
  CHECK_FALSE(MappedLabeler(noisy, LabelMapping::defaults()).label(img, rng).contains(truck));
  CHECK_THROWS_AS(MultiLabelBackend(spec, EmissionSets::defaults(), EmissionNoise{1.5, 0.0, 0.0}), ConfigError);
}

TEST_CASE("remote label wire format round-trips") {
  const GrayImage img(64, 64, 33);
  CHECK(decode_label_request(encode_label_request(img)) == img);
  const LabelSet set({{"Truck", 0.75}, {"Vehicle", 0.5}});
  CHECK(decode_label_response(encode_label_response(set)) == set);
  CHECK_THROWS_AS(decode_label_response(nlohmann::json{{"nope", 1}}), FormatError);
}

TEST_CASE("remote source reports an unreachable service as an io error") {
  const RemoteLabelSource source("127.0.0.1", 1);
  Rng rng(1);
  CHECK_THROWS_AS((void)source.labels(GrayImage(64, 64, 1), rng), IoError);
}
