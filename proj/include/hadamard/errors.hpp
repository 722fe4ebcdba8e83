#pragma once

#include <stdexcept>
#include <string>

namespace hadamard {

// Precondition violated: lambda outside [0,1], bad simplex weights, empty witness set...
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Points or dual elements that do not belong to the same space model.
class SpaceMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input document; `where` is a JSON pointer or file location.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

}  // namespace hadamard
