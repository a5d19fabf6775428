#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pgarcs {

/// Precondition violated by a caller-supplied value (bad code, bad r, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Work limit exceeded (closure cap, oracle size, unsupported prime range).
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point set is not a union of orbits of the prescribed group.
class NotAdmittedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pgarcs
