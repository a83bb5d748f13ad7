#include "service.hpp"

#include <httplib.h>

#include "langeval/errors.hpp"

namespace langeval {

Service::Service(std::shared_ptr<const Dataset> dataset, std::optional<std::filesystem::path> static_dir)
    : handler_(std::move(dataset)), server_(std::make_unique<httplib::Server>()) {
  auto api = [this](const httplib::Request& req, httplib::Response& res) {
    ApiRequest request{req.method, req.path, {}, req.body};
    for (const auto& [key, value] : req.params) request.query.emplace(key, value);
    const ApiResponse response = handler_.handle(request);
    res.status = response.status;
    res.set_content(response.body, response.content_type);
  };
  server_->Get("/api/.*", api);
  server_->Post("/api/.*", api);
  server_->Put("/api/.*", api);
  server_->Delete("/api/.*", api);

  if (static_dir && std::filesystem::is_directory(*static_dir)) {
    server_->set_mount_point("/", static_dir->string());
  }
  server_->set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    const ApiResponse e = error_response(res.status, res.status == 404 ? "not found: " + req.path : "request failed");
    res.set_content(e.body, e.content_type);
  });
}

Service::~Service() = default;

int Service::bind(const std::string& host, int port) {
  const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void Service::listen() { server_->listen_after_bind(); }

void Service::stop() { server_->stop(); }

}  // namespace langeval
