#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tca {

/// Index (vertex, time step, matrix line) outside the valid range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A documented precondition of an operation does not hold.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A candidate edge set overlaps the graph or escapes the problem's candidates.
class InvalidCandidateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input; carries the 1-based line number (0 when unknown).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what, const std::string& source = "")
      : std::runtime_error((source.empty() ? "" : source + ": ") +
                           (line == 0 ? what : "line " + std::to_string(line) + ": " + what)),
        line_(line),
        message_(what) {}

  std::size_t line() const noexcept { return line_; }
  /// The message without the line prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

}  // namespace tca
