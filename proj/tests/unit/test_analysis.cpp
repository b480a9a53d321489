#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "gauntlet/analysis/dedup.hpp"
#include "gauntlet/analysis/oracle.hpp"
#include "gauntlet/analysis/report.hpp"
#include "gauntlet/core/error.hpp"
#include "gauntlet/tiles/synth.hpp"

using namespace gauntlet;
using namespace gauntlet::analysis;

TEST_CASE("dp and enumeration agree on random models") {
  Rng rng(21);
  const auto flex = GradePolicy::flexible();
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng.below(12));
    const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
    const SelectionModel model{rng.uniform(), rng.uniform()};
    const auto type = rng.bernoulli(0.5) ? PromptType::Double : PromptType::Single;
    const double scale = 0.5 + 0.5 * rng.uniform();
    const double a = pass_probability_dp(model, n, m, flex, type, scale);
    const double b = pass_probability_bruteforce(model, n, m, flex, type, scale);
    CHECK(std::abs(a - b) <= 1e-12);
    const auto da = round_classes_dp(model, n, m);
    double sum = 0;
    for (double p : da) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(round_classes_bruteforce({0.5, 0.5}, 3, 21), SizeError);
}

TEST_CASE("closed forms for small challenges") {
  const SelectionModel model{0.9, 0.05};
  const double pt = model.p_t;
  const double pf = model.p_f;
  // Strict: every target picked and no other tile.
  const double strict_single = std::pow(pt, 3) * std::pow(1 - pf, 6);
  CHECK(pass_probability_dp(model, 3, 9, GradePolicy::strict(), PromptType::Single) ==
        doctest::Approx(strict_single).epsilon(1e-12));
  CHECK(pass_probability_dp(model, 3, 9, GradePolicy::strict(), PromptType::Double) ==
        doctest::Approx(strict_single * strict_single).epsilon(1e-12));
  // Flexible, N = 3 of 4 tiles, single prompt.
  const double exact = pt * pt * pt * (1 - pf);
  const double plus_wrong = pt * pt * pt * pf;
  const double missing = 3 * pt * pt * (1 - pt) * (1 - pf);
  const double missing_wrong = 3 * pt * pt * (1 - pt) * pf;
  const double expected = exact + 0.735 * plus_wrong + 0.715 * missing + 0.2 * missing_wrong;
  CHECK(pass_probability_dp(model, 3, 4, GradePolicy::flexible(), PromptType::Single) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("campaign accuracy agrees with a direct simulation of the shape") {
  const auto matrix = classifiers::ConfusionMatrix::uniform_diagonal(9, 0.88);
  ShapeDistribution shape;
  shape.target_weights = {0.08, 0.24, 0.24, 0.17, 0.12, 0.09, 0.06, 0.0, 0.0};
  shape.double_prompt_probability = 0.4;
  shape.flexibility_scale = 0.8;
  const auto policy = GradePolicy::flexible();
  const double v = expected_campaign_accuracy(matrix, policy, shape);

  // Tile-level Monte Carlo: non-targets take a uniform other class, then every
  // tile is labeled through the confusion row and selected if labeled as the target.
  Rng rng(99);
  const int trials = 200000;
  double total = 0;
  for (int t = 0; t < trials; ++t) {
    const auto target = category_at(rng.below(9));
    const bool dbl = rng.bernoulli(shape.double_prompt_probability);
    std::vector<ConditionClass> classes;
    for (int round = 0; round < (dbl ? 2 : 1); ++round) {
      const int n = 1 + static_cast<int>(rng.weighted(shape.target_weights));
      GradeCondition cond{n, 0, 0, dbl ? PromptType::Double : PromptType::Single};
      for (int i = 0; i < 9; ++i) {
        CategoryId truth = target;
        if (i >= n) {
          const auto other = rng.below(8);
          truth = category_at(other >= index_of(target) ? other + 1 : other);
        }
        if (matrix.sample(truth, rng) == target) (i < n ? cond.correct : cond.wrong) += 1;
      }
      classes.push_back(condition_class(cond));
    }
    total += challenge_pass_probability(classes, dbl ? PromptType::Double : PromptType::Single, policy,
                                        shape.flexibility_scale);
  }
  const double sim = total / trials;
  CHECK(std::abs(sim - v) < 4.0 * std::sqrt(v * (1 - v) / trials));

  CHECK(expected_campaign_accuracy(classifiers::ConfusionMatrix::identity(9), GradePolicy::strict(), shape) ==
        doctest::Approx(1.0));
  ShapeDistribution bad = shape;
  bad.target_weights = {0.5, 0.6, 0, 0, 0, 0, 0, 0, 0};
  CHECK_THROWS_AS(expected_campaign_accuracy(matrix, policy, bad), ConfigError);
}

TEST_CASE("selection model from a confusion matrix") {
  const auto m = classifiers::ConfusionMatrix::with_diagonals({0.9, 0.8, 0.7});
  const auto s = SelectionModel::from_confusion(m, category_at(0));
  CHECK(s.p_t == doctest::Approx(0.9));
  CHECK(s.p_f == doctest::Approx((0.1 + 0.15) / 2));
  CHECK_THROWS_AS((SelectionModel{1.2, 0.0}.validate()), ConfigError);
}

TEST_CASE("binomial interval with continuity correction") {
  const auto ci = binomial_interval(0.5, 100);
  const double half = 2.5758293035489004 * 0.05 + 0.005;
  CHECK(ci.lo == doctest::Approx(0.5 - half));
  CHECK(ci.hi == doctest::Approx(0.5 + half));
  const auto edge = binomial_interval(1.0, 270);
  CHECK(edge.hi == 1.0);
  CHECK(edge.contains(1.0));
  CHECK_FALSE(edge.contains(269.0 / 270.0));
  CHECK(binomial_interval(0.3, 0).contains(0.0));
}

TEST_CASE("percent rounding and cdf") {
  CHECK(percent(1, 3) == 33.33);
  CHECK(percent(2, 3) == 66.67);
  CHECK(percent(259, 270) == 95.93);
  CHECK(percent(0, 0) == 0.0);
  const auto c = cdf({5, 1, 5, 3});
  REQUIRE(c.size() == 3);
  CHECK(c[0] == std::pair<std::int64_t, double>{1, 0.25});
  CHECK(c[2] == std::pair<std::int64_t, double>{5, 1.0});
}

TEST_CASE("campaign aggregation") {
  std::vector<solver::SessionRecord> records(4);
  records[0].outcome = solver::Outcome::Pass;
  records[0].target = "truck";
  records[0].selected_per_round = {3};
  records[0].verified = true;
  records[0].timings = {10, 20, 30};
  records[0].total_ms = 60;
  records[1].outcome = solver::Outcome::Fail;
  records[1].target = "truck";
  records[1].selected_per_round = {2, 4};
  records[1].timings = {10, 20, 30};
  records[1].total_ms = 60;
  records[2].outcome = solver::Outcome::Blocked;
  records[2].message = "Your computer or network has sent too many requests.";
  records[3].outcome = solver::Outcome::Pass;
  records[3].target = "boat";
  records[3].selected_per_round = {1};
  records[3].verified = true;
  records[3].timings = {40, 20, 30};
  records[3].total_ms = 90;
  const auto r = aggregate_campaign(records);
  CHECK(r.sessions == 4);
  CHECK(r.attempted == 3);
  CHECK(r.passed == 2);
  CHECK(r.blocked == 1);
  CHECK(r.verified == 2);
  CHECK(r.accuracy_percent == 66.67);
  CHECK(r.selections_per_challenge.at(6) == 1);
  CHECK(r.selections_per_round.at(4) == 1);
  CHECK(r.mean_acquire_ms == doctest::Approx(20.0));
  CHECK(r.blocked_messages.at("Your computer or network has sent too many requests.") == 1);
  REQUIRE(r.per_category.size() == 2);
  CHECK(r.per_category[1].name == "truck");
  CHECK(r.per_category[1].accuracy == doctest::Approx(0.5));
  CHECK(to_csv(r).find("attempted,3") != std::string::npos);
}

TEST_CASE("dedup report over a directory matches the draw log") {
  const auto dir = std::filesystem::temp_directory_path() / "gauntlet-dedup-test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  tiles::TilePool pool(tiles::SynthSpec::defaults(9), 9, 0.4, Rng(5));
  auto name = [](std::uint64_t i) { return "img" + std::to_string(1000 + i); };
  for (int i = 0; i < 120; ++i) {
    const auto d = pool.draw(category_at(i % 9));
    write_pgm(dir / (name(pool.draw_log().back().draw_index) + ".pgm"), *d.bitmap);
  }
  const auto truth = report_from_draw_log(pool.draw_log(), name);
  const auto a = dedup_report(dir, 0);
  CHECK(a.partitions_equal);
  CHECK(a.exact == truth);
  CHECK(a.phash == truth);
  CHECK(truth.redundant > 0);
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(dedup_report(dir, 0), IoError);
  std::filesystem::create_directories(dir);
  CHECK(dedup_report(dir, 0).phash.total == 0);
  std::filesystem::remove_all(dir);
}
