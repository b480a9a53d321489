#pragma once

#include <vector>

#include "gauntlet/classifiers/features.hpp"
#include "gauntlet/classifiers/labeler.hpp"

namespace gauntlet::classifiers {

/// Row-stochastic K x K matrix: entry (i, j) is the probability that a tile
/// of true class i is labeled j.
class ConfusionMatrix {
 public:
  /// Throws ConfigError unless square, non-negative, rows summing to 1 +/- 1e-9.
  explicit ConfusionMatrix(std::vector<std::vector<double>> rows);

  static ConfusionMatrix identity(std::size_t k);
  /// `diagonal` on the diagonal, remaining mass spread evenly off it.
  static ConfusionMatrix uniform_diagonal(std::size_t k, double diagonal);
  /// Per-class diagonal, off-diagonal mass uniform within each row.
  static ConfusionMatrix with_diagonals(const std::vector<double>& diagonals);

  [[nodiscard]] std::size_t size() const { return rows_.size(); }
  [[nodiscard]] double at(std::size_t truth, std::size_t label) const { return rows_[truth][label]; }
  [[nodiscard]] const std::vector<double>& row(std::size_t truth) const { return rows_[truth]; }
  [[nodiscard]] CategoryId sample(CategoryId truth, Rng& rng) const;

 private:
  std::vector<std::vector<double>> rows_;
};

/// Stand-in for a trained per-tile classifier: recover the class with the
/// matched filter, then emit a label drawn from that class's confusion row.
class ConfusionBackend final : public Labeler {
 public:
  ConfusionBackend(ConfusionMatrix matrix, MatchedFilter features);

  [[nodiscard]] CategoryId classify(const GrayImage& bitmap, Rng& rng) const;
  [[nodiscard]] CategoryMask label(const GrayImage& bitmap, Rng& rng) const override;
  [[nodiscard]] std::string_view name() const override { return "confusion"; }
  [[nodiscard]] const ConfusionMatrix& matrix() const { return matrix_; }

 private:
  ConfusionMatrix matrix_;
  MatchedFilter features_;
};

}  // namespace gauntlet::classifiers
