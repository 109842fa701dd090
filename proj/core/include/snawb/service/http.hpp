#pragma once

#include <memory>
#include <string>

#include "snawb/service/service.hpp"

namespace snawb::service {

// cpp-httplib front end for a Service.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  // Binds and serves on a background thread. Port 0 picks a free port;
  // returns the bound port. Throws snawb::Error when binding fails.
  int start(const std::string& host, int port);
  // Serves on the calling thread until stop() is called from elsewhere.
  void run(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace snawb::service
