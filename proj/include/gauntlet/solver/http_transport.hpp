#pragma once

#include <string>

#include "gauntlet/core/wire.hpp"

namespace gauntlet::solver {

/// Transport over HTTP/1.1. Each call opens its own connection, so one
/// instance may be shared across threads.
class HttpTransport final : public wire::Transport {
 public:
  HttpTransport(std::string host, int port) : host_(std::move(host)), port_(port) {}

  /// Throws IoError on connection failure or a non-JSON body.
  wire::Response post(std::string_view path, const nlohmann::json& body) override;
  wire::Response get(std::string_view path) override;

 private:
  std::string host_;
  int port_;
};

}  // namespace gauntlet::solver
