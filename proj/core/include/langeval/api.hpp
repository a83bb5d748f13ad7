#pragma once

#include <map>
#include <memory>
#include <string>

#include "langeval/dataset.hpp"

namespace langeval {

struct ApiRequest {
  std::string method;  // "GET", "POST"
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json; charset=utf-8";
};

// Transport-independent handler for the read-only /api/v1 endpoints:
//   GET  /api/v1/dataset
//   GET  /api/v1/score?profile=NAME&category=all|technical|environmental
//   POST /api/v1/whatif   (WhatIfRequest JSON)
//   POST /api/v1/sweep    ({parameter, from, to, steps, profile?, category?})
// Holds the dataset by shared const pointer; handle() is safe to call
// concurrently.
class ApiHandler {
 public:
  explicit ApiHandler(std::shared_ptr<const Dataset> dataset);

  ApiResponse handle(const ApiRequest& request) const;

  const Dataset& dataset() const noexcept { return *dataset_; }

 private:
  ApiResponse get_dataset() const;
  ApiResponse get_score(const ApiRequest& request) const;
  ApiResponse post_whatif(const ApiRequest& request) const;
  ApiResponse post_sweep(const ApiRequest& request) const;

  std::shared_ptr<const Dataset> dataset_;
};

// {"error": {"status": S, "message": M, "field": F?}}
ApiResponse error_response(int status, const std::string& message, const std::string& field = "");

}  // namespace langeval
