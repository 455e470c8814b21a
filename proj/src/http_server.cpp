#include "attrex/http_server.hpp"

#include <httplib.h>

namespace attrex {

struct HttpServer::Impl {
  explicit Impl(SessionManager& manager) : service(manager) {}

  SessionService service;
  httplib::Server server;
};

namespace {

void send(httplib::Response& res, const HttpReply& reply) {
  res.status = reply.status;
  res.set_content(reply.body.dump(), "application/json");
}

std::size_t query_number(const httplib::Request& req, const char* key, std::size_t fallback) {
  if (!req.has_param(key)) return fallback;
  try {
    return static_cast<std::size_t>(std::stoull(req.get_param_value(key)));
  } catch (const std::exception&) {
    return fallback;
  }
}

}  // namespace

HttpServer::HttpServer(SessionManager& manager) : impl_(std::make_unique<Impl>(manager)) {
  auto& srv = impl_->server;
  auto& svc = impl_->service;
  srv.Post("/sessions", [&svc](const httplib::Request& req, httplib::Response& res) { send(res, svc.create(req.body)); });
  srv.Get(R"(/sessions/([0-9a-zA-Z_-]+)/state)", [&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.state(req.matches[1]));
  });
  srv.Post(R"(/sessions/([0-9a-zA-Z_-]+)/answer)", [&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.answer(req.matches[1], req.body));
  });
  srv.Get(R"(/sessions/([0-9a-zA-Z_-]+)/journal)", [&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.journal(req.matches[1], query_number(req, "offset", 0), query_number(req, "limit", 50)));
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace attrex
