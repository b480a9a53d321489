#pragma once

#include <string_view>

#include "gauntlet/core/clock.hpp"
#include "gauntlet/core/wire.hpp"
#include "gauntlet/service/service.hpp"

namespace gauntlet::service {

/// Maps the JSON API onto a Service. Shared by the HTTP server and the
/// in-process transport so both paths run identical request handling.
class ApiRouter {
 public:
  explicit ApiRouter(Service& service) : service_(service) {}

  wire::Response post(std::string_view path, const nlohmann::json& body, Millis now);
  wire::Response get(std::string_view path, Millis now);
  /// Raw-body entry point: 400 on malformed JSON.
  wire::Response handle(std::string_view method, std::string_view path, std::string_view body, Millis now);

 private:
  Service& service_;
};

/// Transport that calls the router directly, stamping requests with `clock`.
class InProcessTransport final : public wire::Transport {
 public:
  InProcessTransport(ApiRouter& router, const Clock& clock) : router_(router), clock_(clock) {}

  wire::Response post(std::string_view path, const nlohmann::json& body) override;
  wire::Response get(std::string_view path) override;

 private:
  ApiRouter& router_;
  const Clock& clock_;
};

}  // namespace gauntlet::service
