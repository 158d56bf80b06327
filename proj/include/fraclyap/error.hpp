#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fraclyap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Gamma function evaluated at a nonpositive integer.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Two grid functions (or a grid function and a problem) disagree on the grid.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

// beta in (alpha-1, 1]: the Green's function diagonal is unbounded near b,
// so no finite Lyapunov constant exists.
class NoFiniteBoundError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& message)
      : Error("parse error at offset " + std::to_string(offset) + ": " + message),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Expression evaluation failure: missing variable binding or a domain
// violation (the offending subexpression is carried in the message).
class EvalError : public Error {
 public:
  using Error::Error;
};

}  // namespace fraclyap
