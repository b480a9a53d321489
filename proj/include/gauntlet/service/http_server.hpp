#pragma once

#include <memory>
#include <string>
#include <thread>

#include "gauntlet/core/clock.hpp"
#include "gauntlet/service/api.hpp"

namespace httplib {
class Server;
}

namespace gauntlet::service {

/// The JSON API over HTTP/1.1 on a worker pool.
class HttpServer {
 public:
  HttpServer(ApiRouter& router, const Clock& clock, std::size_t threads = 64);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds (port 0 picks a free port) and serves on a background thread.
  /// Returns the bound port. Throws IoError if binding fails.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  /// Binds and serves on the calling thread until stop() is called.
  void run(const std::string& host, int port);
  void stop();

 private:
  ApiRouter& router_;
  const Clock& clock_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace gauntlet::service
