#pragma once

#include <stdexcept>
#include <string>

namespace platmatch {

// Base for all library errors. `kind()` is a stable machine-readable tag
// used by the CLI for the error JSON and exit-code mapping.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// Malformed or inconsistent instance data (unknown ids, negative values,
// duplicate edges, platform edges overlapping world edges, ...).
class InstanceError : public Error {
 public:
  explicit InstanceError(const std::string& message)
      : Error("instance", message) {}
};

// A solver was invoked on a market outside the class it handles.
class ClassError : public Error {
 public:
  explicit ClassError(const std::string& message) : Error("class", message) {}
};

// Instance exceeds configured size/enumeration limits.
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& message)
      : Error("capacity", message) {}
};

// Unreadable input (bad JSON, bad rational literal, schema mismatch).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error("parse", message) {}
};

}  // namespace platmatch
