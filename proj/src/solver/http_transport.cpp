#include "gauntlet/solver/http_transport.hpp"

#include <httplib.h>

#include "gauntlet/core/error.hpp"

namespace gauntlet::solver {

namespace {

wire::Response convert(const httplib::Result& res, std::string_view path) {
  if (!res) throw IoError("request to " + std::string(path) + " failed: " + httplib::to_string(res.error()));
  try {
    return {res->status, nlohmann::json::parse(res->body)};
  } catch (const nlohmann::json::parse_error&) {
    throw IoError("non-JSON reply from " + std::string(path));
  }
}

}  // namespace

wire::Response HttpTransport::post(std::string_view path, const nlohmann::json& body) {
  httplib::Client client(host_, port_);
  client.set_connection_timeout(10);
  client.set_read_timeout(60);
  return convert(client.Post(std::string(path), body.dump(), "application/json"), path);
}

wire::Response HttpTransport::get(std::string_view path) {
  httplib::Client client(host_, port_);
  client.set_connection_timeout(10);
  client.set_read_timeout(60);
  return convert(client.Get(std::string(path)), path);
}

}  // namespace gauntlet::solver
