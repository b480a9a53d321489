#include "gauntlet/classifiers/multilabel.hpp"

#include <algorithm>

#include "gauntlet/core/error.hpp"

namespace gauntlet::classifiers {

EmissionSets EmissionSets::defaults() {
  EmissionSets e;
  e.per_category = {
      {{"Airplane", 0.95}, {"Aircraft", 0.9}, {"Airliner", 0.85}, {"Aviation", 0.8}, {"Vehicle", 0.75}},
      {{"Bicycle", 0.95}, {"Bicycle wheel", 0.9}, {"Cycling", 0.85}, {"Wheel", 0.8}, {"Vehicle", 0.7}},
      {{"Boat", 0.95}, {"Watercraft", 0.9}, {"Water", 0.85}, {"Naval architecture", 0.75}, {"Vehicle", 0.7}},
      {{"Bus", 0.95}, {"Public transport", 0.9}, {"Transportation", 0.85}, {"Motor vehicle", 0.8}, {"Vehicle", 0.75}},
      {{"Car", 0.95}, {"Land vehicle", 0.9}, {"Automotive design", 0.85}, {"Wheel", 0.8}, {"Vehicle", 0.75}},
      {{"Motorcycle", 0.95}, {"Motor vehicle", 0.9}, {"Wheel", 0.85}, {"Helmet", 0.7}, {"Vehicle", 0.75}},
      {{"Seaplane", 0.95}, {"Floatplane", 0.9}, {"Aircraft", 0.85}, {"Water", 0.8}, {"Aviation", 0.75}},
      {{"Train", 0.95}, {"Rolling stock", 0.9}, {"Railway", 0.85}, {"Track", 0.8}, {"Transportation", 0.75}},
      {{"Truck", 0.95}, {"Transportation", 0.9}, {"Vehicle", 0.85}, {"Tow Truck", 0.8}, {"Trailer Truck", 0.75}},
  };
  e.distractors = {{"Person", 0.6}, {"Human", 0.55}, {"outdoor", 0.7}, {"road", 0.65}, {"Asphalt", 0.6},
                   {"Sky", 0.6},    {"Tree", 0.5},   {"Building", 0.5}};
  return e;
}

namespace {

void check_rate(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string(what) + " outside [0, 1]");
}

}  // namespace

MultiLabelBackend::MultiLabelBackend(const tiles::SynthSpec& spec, EmissionSets emissions, EmissionNoise noise)
    : features_(spec), emissions_(std::move(emissions)), noise_(noise) {
  if (emissions_.per_category.size() != features_.size()) throw ConfigError("emission sets and spec disagree on K");
  check_rate(noise_.dropout, "dropout");
  check_rate(noise_.distractor_rate, "distractor rate");
  check_rate(noise_.score_jitter, "score jitter");
}

LabelSet MultiLabelBackend::labels(const GrayImage& bitmap, Rng& rng) const {
  const auto truth = features_.detect(bitmap);
  LabelSet out;
  auto jittered = [&](const Label& l) {
    const double s = l.score + noise_.score_jitter * (2.0 * rng.uniform() - 1.0);
    return Label{l.name, std::clamp(s, 0.0, 1.0)};
  };
  // Fixed draw count per label keeps the stream position independent of outcomes.
  for (const auto& l : emissions_.per_category[index_of(truth)]) {
    const bool keep = !rng.bernoulli(noise_.dropout);
    const auto scored = jittered(l);
    if (keep) out.add(scored);
  }
  for (const auto& l : emissions_.distractors) {
    const bool inject = rng.bernoulli(noise_.distractor_rate);
    const auto scored = jittered(l);
    if (inject) out.add(scored);
  }
  return out;
}

MappedLabeler::MappedLabeler(std::shared_ptr<const LabelSource> source, LabelMapping mapping)
    : source_(std::move(source)), mapping_(std::move(mapping)) {
  if (!source_) throw ConfigError("mapped labeler needs a label source");
}

CategoryMask MappedLabeler::label(const GrayImage& bitmap, Rng& rng) const {
  return matched_categories(source_->labels(bitmap, rng), mapping_);
}

}  // namespace gauntlet::classifiers
