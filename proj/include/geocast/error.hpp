#pragma once

#include <stdexcept>
#include <string>

namespace geocast {

/// Input outside an operation's domain (bad coordinates, unknown router, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed external input (GraphML, edge lists, CSV, address text).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A protocol or simulation invariant was violated; always a bug.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace geocast
