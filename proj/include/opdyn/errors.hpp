#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace opdyn {

/// Raised when edge-list text cannot be parsed. Carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A documented precondition on an input object (e.g. a stabilized trace) does not hold.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace opdyn
