#pragma once

#include <stdexcept>
#include <string>

namespace fexray {

/// Input or configuration rejected before any work starts. Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input; the message carries the source name and line number.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : ValidationError(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// The point set spans no volume (coplanar, collinear or coincident points).
class DegenerateHullError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fexray
