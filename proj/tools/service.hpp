#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "langeval/api.hpp"

namespace httplib {
class Server;
}

namespace langeval {

// HTTP front for ApiHandler. Static files under `static_dir`, if given, are
// served at "/".
class Service {
 public:
  Service(std::shared_ptr<const Dataset> dataset, std::optional<std::filesystem::path> static_dir);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Returns the bound port; port 0 picks a free one. Throws Error on failure.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void listen();
  void stop();

 private:
  ApiHandler handler_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace langeval
