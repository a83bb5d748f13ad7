#include "langeval/api.hpp"

#include <cmath>

#include "json_util.hpp"
#include "langeval/dataset_io.hpp"
#include "langeval/errors.hpp"
#include "langeval/scoring.hpp"
#include "langeval/sensitivity.hpp"

namespace langeval {

using detail::json;

ApiResponse error_response(int status, const std::string& message, const std::string& field) {
  json err = json::object();
  err["status"] = status;
  err["message"] = message;
  if (!field.empty()) err["field"] = field;
  return ApiResponse{status, json{{"error", std::move(err)}}.dump()};
}

ApiHandler::ApiHandler(std::shared_ptr<const Dataset> dataset) : dataset_(std::move(dataset)) {
  if (!dataset_) throw InvalidArgument("api handler needs a dataset");
}

namespace {

ApiResponse ok(const json& j) { return ApiResponse{200, j.dump()}; }

json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON body: ") + e.what());
  }
}

CategoryFilter category_param(const std::map<std::string, std::string>& query) {
  auto it = query.find("category");
  if (it == query.end()) return CategoryFilter::All;
  auto f = parse_category_filter(it->second);
  if (!f) throw ParseError("category", "expected all, technical or environmental");
  return *f;
}

}  // namespace

ApiResponse ApiHandler::handle(const ApiRequest& request) const {
  struct Route {
    const char* method;
    const char* path;
    ApiResponse (ApiHandler::*fn)(const ApiRequest&) const;
  };
  static constexpr Route routes[] = {
      {"GET", "/api/v1/score", &ApiHandler::get_score},
      {"POST", "/api/v1/whatif", &ApiHandler::post_whatif},
      {"POST", "/api/v1/sweep", &ApiHandler::post_sweep},
  };
  try {
    if (request.path == "/api/v1/dataset") {
      if (request.method != "GET") return error_response(405, "method not allowed");
      return get_dataset();
    }
    for (const auto& r : routes) {
      if (request.path != r.path) continue;
      if (request.method != r.method) return error_response(405, "method not allowed");
      return (this->*r.fn)(request);
    }
    return error_response(404, "no such endpoint: " + request.path);
  } catch (const ParseError& e) {
    return error_response(400, e.message(), e.location());
  } catch (const OverrideError& e) {
    return error_response(422, e.what(), e.field());
  } catch (const InvalidArgument& e) {
    return error_response(422, e.what());
  } catch (const Error& e) {
    return error_response(422, e.what());
  }
}

ApiResponse ApiHandler::get_dataset() const { return ok(to_json(*dataset_)); }

ApiResponse ApiHandler::get_score(const ApiRequest& request) const {
  WhatIfRequest req;
  if (auto it = request.query.find("profile"); it != request.query.end()) req.profile = it->second;
  req.category = category_param(request.query);
  return ok(to_json(what_if(*dataset_, req)));
}

ApiResponse ApiHandler::post_whatif(const ApiRequest& request) const {
  const WhatIfRequest req = whatif_request_from_json(parse_body(request.body));
  return ok(to_json(what_if(*dataset_, req)));
}

ApiResponse ApiHandler::post_sweep(const ApiRequest& request) const {
  const json j = parse_body(request.body);
  detail::reject_unknown(j, {"parameter", "from", "to", "steps", "profile", "category", "weights"}, "");
  WhatIfRequest base;
  if (const json* v = detail::optional_field(j, "profile")) base.profile = detail::as_string(*v, "/profile");
  if (const json* v = detail::optional_field(j, "category")) {
    auto f = parse_category_filter(detail::as_string(*v, "/category"));
    if (!f) throw ParseError("/category", "expected \"all\", \"technical\" or \"environmental\"");
    base.category = *f;
  }
  if (const json* v = detail::optional_field(j, "weights")) {
    detail::expect_object(*v, "/weights");
    for (const auto& [id, w] : v->items()) base.weights[id] = detail::as_number(w, detail::child("/weights", id));
  }
  const std::string parameter = detail::get_string(j, "parameter", "");
  const double from = detail::get_number(j, "from", "");
  const double to = detail::get_number(j, "to", "");
  const json& steps = detail::require(j, "steps", "");
  if (!steps.is_number_integer()) throw ParseError("/steps", "expected an integer");

  const WeightProfile profile = apply_weight_overrides(*dataset_, base);
  if (dataset_->framework.find(parameter) == nullptr) {
    throw OverrideError("parameter", "unknown parameter '" + parameter + "'");
  }
  try {
    return ok(to_json(weight_sweep(*dataset_, profile, base.category, parameter, from, to, steps.get<int>())));
  } catch (const InvalidArgument& e) {
    throw OverrideError("", e.what());
  }
}

}  // namespace langeval
