#pragma once

#include <string>

#include <json.hpp>

#include "gauntlet/classifiers/multilabel.hpp"

namespace gauntlet::classifiers {

/// Request body for a remote labeling service: {"image": "<base64 PGM>"}.
nlohmann::json encode_label_request(const GrayImage& bitmap);
GrayImage decode_label_request(const nlohmann::json& body);

/// Response body: {"labels": [{"name": str, "score": float}, ...]}.
nlohmann::json encode_label_response(const LabelSet& labels);
/// Throws FormatError on a malformed body.
LabelSet decode_label_response(const nlohmann::json& body);

/// Label source backed by an HTTP service speaking the contract above.
/// The rng argument is unused; the remote side owns its randomness.
class RemoteLabelSource final : public LabelSource {
 public:
  RemoteLabelSource(std::string host, int port, std::string path = "/labels");

  /// Throws IoError on transport failure or a non-200 status.
  [[nodiscard]] LabelSet labels(const GrayImage& bitmap, Rng& rng) const override;

 private:
  std::string host_;
  int port_;
  std::string path_;
};

}  // namespace gauntlet::classifiers
