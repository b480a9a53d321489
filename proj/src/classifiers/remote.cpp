#include "gauntlet/classifiers/remote.hpp"

#include <httplib.h>

#include "gauntlet/core/base64.hpp"
#include "gauntlet/core/error.hpp"

namespace gauntlet::classifiers {

using nlohmann::json;

json encode_label_request(const GrayImage& bitmap) { return {{"image", base64_encode(encode_pgm(bitmap))}}; }

GrayImage decode_label_request(const json& body) {
  if (!body.is_object() || !body.contains("image") || !body["image"].is_string()) {
    throw FormatError("label request needs an image string");
  }
  return decode_pgm(base64_decode(body["image"].get<std::string>()));
}

json encode_label_response(const LabelSet& labels) {
  json list = json::array();
  for (const auto& l : labels.labels()) list.push_back({{"name", l.name}, {"score", l.score}});
  return {{"labels", list}};
}

LabelSet decode_label_response(const json& body) {
  if (!body.is_object() || !body.contains("labels") || !body["labels"].is_array()) {
    throw FormatError("label response needs a labels array");
  }
  LabelSet out;
  for (const auto& item : body["labels"]) {
    if (!item.is_object() || !item.contains("name") || !item["name"].is_string() || !item.contains("score") ||
        !item["score"].is_number()) {
      throw FormatError("label entries need a name and a numeric score");
    }
    try {
      out.add({item["name"].get<std::string>(), item["score"].get<double>()});
    } catch (const ConfigError& e) {
      throw FormatError(e.what());
    }
  }
  return out;
}

RemoteLabelSource::RemoteLabelSource(std::string host, int port, std::string path)
    : host_(std::move(host)), port_(port), path_(std::move(path)) {}

LabelSet RemoteLabelSource::labels(const GrayImage& bitmap, Rng& /*rng*/) const {
  httplib::Client client(host_, port_);
  client.set_connection_timeout(5);
  client.set_read_timeout(30);
  auto res = client.Post(path_, encode_label_request(bitmap).dump(), "application/json");
  if (!res) throw IoError("label service unreachable: " + httplib::to_string(res.error()));
  if (res->status != 200) throw IoError("label service returned status " + std::to_string(res->status));
  json body;
  try {
    body = json::parse(res->body);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("label service sent invalid JSON: ") + e.what());
  }
  return decode_label_response(body);
}

}  // namespace gauntlet::classifiers
