#include <doctest.h>

#include <set>

#include "gauntlet/core/base64.hpp"
#include "gauntlet/core/error.hpp"
#include "gauntlet/core/image.hpp"
#include "gauntlet/core/model.hpp"
#include "gauntlet/core/profile.hpp"
#include "gauntlet/core/rng.hpp"
#include "gauntlet/core/wire.hpp"

using namespace gauntlet;

TEST_CASE("rng streams are reproducible and forks ignore draw history") {
  Rng a = Rng::stream(42, "challenge");
  Rng b = Rng::stream(42, "challenge");
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  CHECK(Rng::stream(42, "challenge").next_u64() != Rng::stream(42, "grade").next_u64());
  CHECK(Rng::stream(42, "challenge").next_u64() != Rng::stream(43, "challenge").next_u64());

  Rng fresh = Rng::stream(7, "x");
  Rng used = Rng::stream(7, "x");
  for (int i = 0; i < 17; ++i) used.uniform();
  CHECK(fresh.fork(3).next_u64() == used.fork(3).next_u64());
  CHECK(fresh.fork(3).next_u64() != fresh.fork(4).next_u64());
}

TEST_CASE("rng distributions stay in range and match their means") {
  Rng r(9);
  double sum = 0;
  std::array<int, 3> counts{};
  const std::array<double, 3> w = {1.0, 0.0, 3.0};
  for (int i = 0; i < 40000; ++i) {
    const double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    CHECK(r.below(7) < 7);
    ++counts[r.weighted(w)];
  }
  CHECK(sum / 40000 == doctest::Approx(0.5).epsilon(0.01));
  CHECK(counts[1] == 0);
  CHECK(static_cast<double>(counts[2]) / 40000 == doctest::Approx(0.75).epsilon(0.02));
}

TEST_CASE("base64 matches the RFC 4648 vectors") {
  const std::pair<const char*, const char*> vectors[] = {
      {"", ""}, {"f", "Zg=="}, {"fo", "Zm8="}, {"foo", "Zm9v"}, {"foob", "Zm9vYg=="}, {"fooba", "Zm9vYmE="},
      {"foobar", "Zm9vYmFy"}};
  for (auto [plain, coded] : vectors) {
    CHECK(base64_encode(plain) == coded);
    CHECK(base64_decode(coded) == plain);
  }
  CHECK_THROWS_AS(base64_decode("Zm9v!"), FormatError);
  std::string bytes;
  for (int i = 0; i < 256; ++i) bytes.push_back(static_cast<char>(i));
  CHECK(base64_decode(base64_encode(bytes)) == bytes);
}

TEST_CASE("pgm encoding round-trips and rejects garbage") {
  GrayImage img(3, 2);
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 3; ++x) img.at(x, y) = static_cast<std::uint8_t>(40 * y + x);
  const auto bytes = encode_pgm(img);
  CHECK(bytes.rfind("P5\n3 2\n255\n", 0) == 0);
  CHECK(bytes.size() == 11 + 6);
  CHECK(decode_pgm(bytes) == img);
  CHECK_THROWS_AS(decode_pgm("P6\n1 1\n255\nx"), FormatError);
  CHECK_THROWS_AS(decode_pgm("P5\n4 4\n255\nshort"), FormatError);
}

TEST_CASE("category set validates names") {
  const auto d = CategorySet::defaults();
  CHECK(d.size() == 9);
  CHECK(d.name(d.require("truck")) == "truck");
  CHECK_FALSE(d.find("zebra").has_value());
  CHECK_THROWS_AS((void)d.require("zebra"), ConfigError);
  CHECK_THROWS_AS(CategorySet({"a", "a"}), ConfigError);
}

namespace {

// Independent restatement of the condition classes from their definitions.
ConditionClass expected_class(int n, int c, int w) {
  if (c == n && w == 0) return ConditionClass::Exact;
  if (c == n && w == 1) return ConditionClass::AllCorrectPlusWrong;
  if (n >= 3 && c == n - 1 && w == 0) return ConditionClass::MissingOne;
  if (n >= 3 && c == n - 1 && w == 1) return ConditionClass::MissingOnePlusWrong;
  return ConditionClass::Other;
}

}  // namespace

TEST_CASE("condition classes over every (N, C, W)") {
  for (int n = 1; n <= 9; ++n)
    for (int c = 0; c <= n; ++c)
      for (int w = 0; w <= 9 - n; ++w) {
        for (auto type : {PromptType::Single, PromptType::Double}) {
          CAPTURE(n);
          CAPTURE(c);
          CAPTURE(w);
          CHECK(condition_class({n, c, w, type}) == expected_class(n, c, w));
        }
      }
}

TEST_CASE("flexible policy carries the observed pass rates") {
  const auto p = GradePolicy::flexible();
  using enum ConditionClass;
  CHECK(p.probability(PromptType::Single, AllCorrectPlusWrong) == 0.735);
  CHECK(p.probability(PromptType::Double, AllCorrectPlusWrong) == 0.245);
  CHECK(p.probability(PromptType::Single, MissingOne) == 0.715);
  CHECK(p.probability(PromptType::Double, MissingOne) == 0.615);
  CHECK(p.probability(PromptType::Single, MissingOnePlusWrong) == 0.200);
  CHECK(p.probability(PromptType::Double, MissingOnePlusWrong) == 0.305);
  for (auto t : {PromptType::Single, PromptType::Double}) {
    CHECK(p.probability(t, Exact) == 1.0);
    CHECK(p.probability(t, Other) == 0.0);
    CHECK(GradePolicy::strict().probability(t, MissingOne) == 0.0);
  }
  auto q = GradePolicy::strict();
  CHECK_THROWS_AS(q.set(PromptType::Single, Exact, 0.5), ConfigError);
  CHECK_THROWS_AS(q.set(PromptType::Single, MissingOne, 1.5), ConfigError);
}

TEST_CASE("double prompt applies the worst non-exact round once") {
  const auto p = GradePolicy::flexible();
  using enum ConditionClass;
  CHECK(challenge_pass_probability({Exact, Exact}, PromptType::Double, p, 1.0) == 1.0);
  CHECK(challenge_pass_probability({Exact, MissingOne}, PromptType::Double, p, 1.0) == 0.615);
  CHECK(challenge_pass_probability({MissingOne, AllCorrectPlusWrong}, PromptType::Double, p, 1.0) == 0.245);
  CHECK(challenge_pass_probability({MissingOne, Other}, PromptType::Double, p, 1.0) == 0.0);
  CHECK(challenge_pass_probability({MissingOne}, PromptType::Single, p, 0.8) == doctest::Approx(0.715 * 0.8));
  CHECK(challenge_pass_probability({Exact}, PromptType::Single, p, 0.5) == 1.0);
}

TEST_CASE("grading consumes exactly one uniform and rejects bad selections") {
  Challenge ch;
  ch.challenge_id = "c";
  ch.target = category_at(0);
  Round round;
  for (int i = 0; i < 4; ++i) round.tiles.push_back({"t" + std::to_string(i), nullptr, category_at(i % 2), 0});
  ch.rounds.push_back(round);
  for (const auto& chosen : {std::vector<std::string>{"t0", "t2"}, std::vector<std::string>{"t1"}}) {
    Rng used(5);
    Rng reference(5);
    const auto d = grade_challenge(ch, {"c", {chosen}}, GradePolicy::flexible(), used);
    reference.uniform();
    CHECK(used.next_u64() == reference.next_u64());
    CHECK(d.conditions.size() == 1);
  }
  Rng r(1);
  const auto exact = grade_challenge(ch, {"c", {{"t0", "t2"}}}, GradePolicy::strict(), r);
  CHECK(exact.pass);
  CHECK(exact.conditions[0] == GradeCondition{2, 2, 0, PromptType::Single});
  CHECK_THROWS_AS(condition_of(round, ch.target, PromptType::Single, {"t0", "t0"}), InvalidSelection);
  CHECK_THROWS_AS(condition_of(round, ch.target, PromptType::Single, {"nope"}), InvalidSelection);
}

TEST_CASE("profiles round-trip through strict JSON") {
  for (const auto& p : {ClientProfile::regular_browser(), ClientProfile::automation_default(),
                        ClientProfile::headless_automation()}) {
    CHECK(profile_from_json(to_json(p)) == p);
  }
  auto j = to_json(ClientProfile::regular_browser());
  j.erase("webdriver");
  CHECK_THROWS(profile_from_json(j));
  auto k = to_json(ClientProfile::regular_browser());
  k["ip_tag"] = "satellite";
  CHECK_THROWS(profile_from_json(k));
}

TEST_CASE("wire view carries images but no ground truth") {
  Challenge ch;
  ch.challenge_id = "abc";
  ch.prompt_text = prompt_text_for("truck");
  ch.target = category_at(8);
  Round round;
  auto img = std::make_shared<GrayImage>(64, 64, 128);
  round.tiles.push_back({"t0", img, category_at(8), 17});
  ch.rounds.push_back(round);
  const auto j = wire::encode_round(ch, 0, 5000);
  const auto text = j.dump();
  CHECK(text.find("truth") == std::string::npos);
  CHECK(text.find("pool_slot") == std::string::npos);
  CHECK(text.find("\"target\"") == std::string::npos);
  const auto view = wire::decode_challenge_view(j);
  CHECK(view.challenge_id == "abc");
  CHECK(view.tiles.size() == 1);
  CHECK(view.tiles[0].image == *img);
  CHECK(view.expires_in_ms == 5000);
}
