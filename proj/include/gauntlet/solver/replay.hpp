#pragma once

#include <filesystem>
#include <mutex>
#include <vector>

#include "gauntlet/core/wire.hpp"

namespace gauntlet::solver {

/// One request/response pair as it crossed the wire.
struct Exchange {
  std::string method;
  std::string path;
  nlohmann::json request;  // null for GET
  wire::Response response;
};

nlohmann::json to_json(const Exchange& e);
Exchange exchange_from_json(const nlohmann::json& j);

/// Forwards to `inner` and keeps a copy of every exchange.
class RecordingTransport final : public wire::Transport {
 public:
  explicit RecordingTransport(wire::Transport& inner) : inner_(inner) {}

  wire::Response post(std::string_view path, const nlohmann::json& body) override;
  wire::Response get(std::string_view path) override;
  [[nodiscard]] std::vector<Exchange> exchanges() const;
  /// One exchange per line.
  void save(const std::filesystem::path& file) const;

 private:
  wire::Transport& inner_;
  mutable std::mutex mu_;
  std::vector<Exchange> log_;
};

/// Serves recorded responses in order without any service behind it.
/// A request that differs from the recording throws ProtocolError.
class ReplayTransport final : public wire::Transport {
 public:
  explicit ReplayTransport(std::vector<Exchange> log) : log_(std::move(log)) {}
  static ReplayTransport load(const std::filesystem::path& file);

  wire::Response post(std::string_view path, const nlohmann::json& body) override;
  wire::Response get(std::string_view path) override;
  [[nodiscard]] bool exhausted() const { return next_ == log_.size(); }

 private:
  wire::Response next(std::string_view method, std::string_view path, const nlohmann::json& body);

  std::vector<Exchange> log_;
  std::size_t next_ = 0;
};

}  // namespace gauntlet::solver
