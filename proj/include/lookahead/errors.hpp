#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lookahead {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed automaton or strategy text. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A caller-supplied value is outside the domain of the operation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An explicit construction would exceed the configured size budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t required, std::size_t budget)
      : Error("size budget of " + std::to_string(budget) + " exceeded (required: " +
              std::to_string(required) + ")"),
        required_(required) {}
  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t required_;
};

}  // namespace lookahead
