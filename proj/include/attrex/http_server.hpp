#pragma once

#include <memory>
#include <string>

#include "attrex/session.hpp"

namespace attrex {

/// Binds a SessionService to an HTTP listener.
class HttpServer {
 public:
  explicit HttpServer(SessionManager& manager);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds to host:port (port 0 picks a free port). Returns the bound port,
  /// or -1 when binding failed.
  int bind(const std::string& host, int port);
  /// Blocks until stop() is called.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace attrex
