#include "gauntlet/solver/replay.hpp"

#include <fstream>

#include "gauntlet/solver/client.hpp"

namespace gauntlet::solver {

using nlohmann::json;

json to_json(const Exchange& e) {
  return {{"method", e.method},
          {"path", e.path},
          {"request", e.request},
          {"status", e.response.status},
          {"response", e.response.body}};
}

Exchange exchange_from_json(const json& j) {
  try {
    return {j.at("method").get<std::string>(), j.at("path").get<std::string>(), j.at("request"),
            {j.at("status").get<int>(), j.at("response")}};
  } catch (const json::exception& e) {
    throw FormatError(std::string("exchange record: ") + e.what());
  }
}

wire::Response RecordingTransport::post(std::string_view path, const json& body) {
  auto r = inner_.post(path, body);
  std::lock_guard lock(mu_);
  log_.push_back({"POST", std::string(path), body, r});
  return r;
}

wire::Response RecordingTransport::get(std::string_view path) {
  auto r = inner_.get(path);
  std::lock_guard lock(mu_);
  log_.push_back({"GET", std::string(path), nullptr, r});
  return r;
}

std::vector<Exchange> RecordingTransport::exchanges() const {
  std::lock_guard lock(mu_);
  return log_;
}

void RecordingTransport::save(const std::filesystem::path& file) const {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write " + file.string());
  for (const auto& e : exchanges()) out << to_json(e).dump() << '\n';
}

ReplayTransport ReplayTransport::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot read " + file.string());
  std::vector<Exchange> log;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) log.push_back(exchange_from_json(json::parse(line)));
  }
  return ReplayTransport(std::move(log));
}

wire::Response ReplayTransport::next(std::string_view method, std::string_view path, const json& body) {
  if (next_ >= log_.size()) throw ProtocolError(0, "replay exhausted");
  const auto& e = log_[next_];
  if (e.method != method || e.path != path || e.request != body) {
    throw ProtocolError(0, "request diverges from recording at exchange " + std::to_string(next_));
  }
  ++next_;
  return e.response;
}

wire::Response ReplayTransport::post(std::string_view path, const json& body) { return next("POST", path, body); }

wire::Response ReplayTransport::get(std::string_view path) { return next("GET", path, nullptr); }

}  // namespace gauntlet::solver
