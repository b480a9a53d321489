#include "gauntlet/service/http_server.hpp"

#include <httplib.h>

#include "gauntlet/core/error.hpp"

namespace gauntlet::service {

HttpServer::HttpServer(ApiRouter& router, const Clock& clock, std::size_t threads)
    : router_(router), clock_(clock), server_(std::make_unique<httplib::Server>()) {
  server_->new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  auto reply = [](httplib::Response& res, const wire::Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server_->Post(R"(/api/.*)", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, router_.handle("POST", req.path, req.body, clock_.now()));
  });
  server_->Get(R"(/api/.*)", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, router_.handle("GET", req.path, "", clock_.now()));
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
  const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound <= 0) throw IoError("cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

void HttpServer::run(const std::string& host, int port) {
  if (!server_->listen(host, port)) throw IoError("cannot listen on " + host + ":" + std::to_string(port));
}

void HttpServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace gauntlet::service
