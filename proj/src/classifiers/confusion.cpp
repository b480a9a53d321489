#include "gauntlet/classifiers/confusion.hpp"

#include <cmath>

#include "gauntlet/core/error.hpp"

namespace gauntlet::classifiers {

ConfusionMatrix::ConfusionMatrix(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {
  if (rows_.empty() || rows_.size() > CategorySet::kMaxCategories) throw ConfigError("confusion matrix size");
  for (const auto& r : rows_) {
    if (r.size() != rows_.size()) throw ConfigError("confusion matrix must be square");
    double sum = 0.0;
    for (double v : r) {
      if (!(v >= 0.0)) throw ConfigError("confusion matrix entries must be non-negative");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("confusion matrix rows must sum to 1");
  }
}

ConfusionMatrix ConfusionMatrix::identity(std::size_t k) { return uniform_diagonal(k, 1.0); }

ConfusionMatrix ConfusionMatrix::uniform_diagonal(std::size_t k, double diagonal) {
  return with_diagonals(std::vector<double>(k, diagonal));
}

ConfusionMatrix ConfusionMatrix::with_diagonals(const std::vector<double>& diagonals) {
  const std::size_t k = diagonals.size();
  std::vector<std::vector<double>> rows(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    const double d = diagonals[i];
    if (!(d >= 0.0 && d <= 1.0)) throw ConfigError("diagonal entry outside [0, 1]");
    if (k == 1 && d != 1.0) throw ConfigError("a single class must have diagonal 1");
    for (std::size_t j = 0; j < k; ++j) rows[i][j] = i == j ? d : (1.0 - d) / static_cast<double>(k - 1);
  }
  return ConfusionMatrix(std::move(rows));
}

CategoryId ConfusionMatrix::sample(CategoryId truth, Rng& rng) const {
  return category_at(rng.weighted(rows_.at(index_of(truth))));
}

ConfusionBackend::ConfusionBackend(ConfusionMatrix matrix, MatchedFilter features)
    : matrix_(std::move(matrix)), features_(std::move(features)) {
  if (matrix_.size() != features_.size()) throw ConfigError("confusion matrix and feature extractor disagree on K");
}

CategoryId ConfusionBackend::classify(const GrayImage& bitmap, Rng& rng) const {
  return matrix_.sample(features_.detect(bitmap), rng);
}

CategoryMask ConfusionBackend::label(const GrayImage& bitmap, Rng& rng) const {
  return CategoryMask::of(classify(bitmap, rng));
}

}  // namespace gauntlet::classifiers
