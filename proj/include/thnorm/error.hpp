#pragma once

#include <stdexcept>
#include <string>

namespace thnorm {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input size is outside the supported enumeration range.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// The requested fast path does not exist for this factor count.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// The factorial work budget of an exact evaluation would be exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Matrix/table dimensions or roles do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A value violates a documented invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Exact arithmetic left the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input. Line and field are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int field = 0)
      : Error(format(what, line, field)), line_(line), field_(field) {}

  int line() const noexcept { return line_; }
  int field() const noexcept { return field_; }

 private:
  static std::string format(const std::string& what, int line, int field) {
    if (line == 0) return what;
    std::string out = "line " + std::to_string(line);
    if (field != 0) out += ", field " + std::to_string(field);
    return out + ": " + what;
  }

  int line_;
  int field_;
};

}  // namespace thnorm
