#pragma once

#include <stdexcept>
#include <string>

namespace langeval {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text or a structurally invalid field. `location` is either
// "line L, column C" (syntax) or a JSON pointer such as "/ratings/3/value".
class ParseError : public Error {
 public:
  ParseError(std::string location, const std::string& message)
      : Error(location.empty() ? message : location + ": " + message),
        location_(std::move(location)),
        message_(message) {}
  const std::string& location() const noexcept { return location_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string location_;
  std::string message_;
};

// A field names an id (subject, parameter, sub-parameter) that does not exist.
class UnresolvedReferenceError : public Error {
 public:
  UnresolvedReferenceError(std::string location, std::string id, const std::string& what)
      : Error(location + ": unresolved " + what + " '" + id + "'"),
        location_(std::move(location)),
        id_(std::move(id)) {}
  const std::string& location() const noexcept { return location_; }
  const std::string& id() const noexcept { return id_; }

 private:
  std::string location_;
  std::string id_;
};

class DuplicateIdError : public Error {
 public:
  DuplicateIdError(const std::string& location, const std::string& id)
      : Error(location + ": duplicate id '" + id + "'"), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

// A rating cell required for scoring is absent.
class MissingRatingError : public Error {
 public:
  using Error::Error;
};

class UnknownSubjectError : public Error {
 public:
  using Error::Error;
};

// Demand snapshot violates its invariants (negative value, missing subject,
// all-zero sub-feature).
class SnapshotError : public Error {
 public:
  using Error::Error;
};

// A what-if override or sweep request names an invalid target or value.
class OverrideError : public Error {
 public:
  OverrideError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace langeval
