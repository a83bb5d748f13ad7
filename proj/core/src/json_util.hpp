#pragma once

// Strict field access for the dataset formats: every object is checked for
// unknown keys and every error carries a JSON pointer.

#include <initializer_list>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "langeval/errors.hpp"

namespace langeval::detail {

using json = nlohmann::ordered_json;

inline std::string child(const std::string& pointer, std::string_view key) {
  std::string out = pointer + "/";
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

inline std::string child(const std::string& pointer, std::size_t index) {
  return pointer + "/" + std::to_string(index);
}

inline std::string where(const std::string& pointer) { return pointer.empty() ? "/" : pointer; }

inline void expect_object(const json& j, const std::string& pointer) {
  if (!j.is_object()) throw ParseError(where(pointer), "expected an object");
}

inline void expect_array(const json& j, const std::string& pointer) {
  if (!j.is_array()) throw ParseError(where(pointer), "expected an array");
}

inline void reject_unknown(const json& j, std::initializer_list<std::string_view> allowed,
                           const std::string& pointer) {
  expect_object(j, pointer);
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || a == key;
    if (!known) throw ParseError(child(pointer, key), "unknown field");
  }
}

inline const json& require(const json& j, std::string_view key, const std::string& pointer) {
  auto it = j.find(std::string(key));
  if (it == j.end()) throw ParseError(child(pointer, key), "missing required field");
  return *it;
}

inline const json* optional_field(const json& j, std::string_view key) {
  auto it = j.find(std::string(key));
  if (it == j.end() || it->is_null()) return nullptr;
  return &*it;
}

inline std::string as_string(const json& j, const std::string& pointer) {
  if (!j.is_string()) throw ParseError(where(pointer), "expected a string");
  return j.get<std::string>();
}

inline double as_number(const json& j, const std::string& pointer) {
  if (!j.is_number()) throw ParseError(where(pointer), "expected a number");
  return j.get<double>();
}

inline std::string get_string(const json& j, std::string_view key, const std::string& pointer) {
  return as_string(require(j, key, pointer), child(pointer, key));
}

inline double get_number(const json& j, std::string_view key, const std::string& pointer) {
  return as_number(require(j, key, pointer), child(pointer, key));
}

// Integral values are written as JSON integers so counts stay readable.
inline json number(double v) {
  if (v == static_cast<double>(static_cast<long long>(v)) && v > -9.0e15 && v < 9.0e15) {
    return static_cast<long long>(v);
  }
  return v;
}

}  // namespace langeval::detail
