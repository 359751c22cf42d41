#pragma once

#include <stdexcept>
#include <string>

namespace pod {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance or request size outside the supported range.
class InvalidSizeError : public Error {
 public:
  using Error::Error;
};

// No edge-disjoint pair can exist for the requested size.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// A solution does not match the instance it is evaluated on.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed instance data (asymmetric matrix, triangle violation, ...).
class InvalidInstanceError : public Error {
 public:
  using Error::Error;
};

// Search space, memory or time budget exhausted.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::size_t explored = 0)
      : Error(what), explored_(explored) {}

  std::size_t explored() const noexcept { return explored_; }

 private:
  std::size_t explored_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace pod
