#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gcoarse {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A value outside the domain an operation accepts (non-positive weight,
/// theta outside (0,1), unknown vertex, d > n, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An input that violates a documented precondition of the operation.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Elimination or contraction of a vertex whose row cannot be pivoted on.
class DegenerateVertexError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

}  // namespace gcoarse
