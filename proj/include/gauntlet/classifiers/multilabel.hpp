#pragma once

#include <memory>
#include <vector>

#include "gauntlet/classifiers/features.hpp"
#include "gauntlet/classifiers/labels.hpp"

namespace gauntlet::classifiers {

/// Anything that returns a label set for a tile: the simulated API below or
/// a remote service.
class LabelSource {
 public:
  virtual ~LabelSource() = default;
  [[nodiscard]] virtual LabelSet labels(const GrayImage& bitmap, Rng& rng) const = 0;
};

struct EmissionNoise {
  double dropout = 0.0;          // per-synonym drop probability
  double distractor_rate = 0.0;  // per-distractor injection probability
  double score_jitter = 0.05;    // half-width of uniform score noise
};

/// Labels an API would return for each category, plus unrelated labels it
/// may add to any image.
struct EmissionSets {
  std::vector<std::vector<Label>> per_category;
  std::vector<Label> distractors;

  static EmissionSets defaults();
};

/// Simulated multi-label vision API: detects the true class with the matched
/// filter and emits that class's labels with dropout, plus distractors.
class MultiLabelBackend final : public LabelSource {
 public:
  /// Throws ConfigError if the emission sets and spec disagree on K or a
  /// noise rate is outside [0, 1].
  MultiLabelBackend(const tiles::SynthSpec& spec, EmissionSets emissions, EmissionNoise noise);

  [[nodiscard]] LabelSet labels(const GrayImage& bitmap, Rng& rng) const override;

 private:
  MatchedFilter features_;
  EmissionSets emissions_;
  EmissionNoise noise_;
};

/// Turns a label source into a Labeler through a synonym mapping.
class MappedLabeler final : public Labeler {
 public:
  MappedLabeler(std::shared_ptr<const LabelSource> source, LabelMapping mapping);

  [[nodiscard]] CategoryMask label(const GrayImage& bitmap, Rng& rng) const override;
  [[nodiscard]] std::string_view name() const override { return "multilabel"; }

 private:
  std::shared_ptr<const LabelSource> source_;
  LabelMapping mapping_;
};

}  // namespace gauntlet::classifiers
