#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hartogs {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed profile expression. position is a 0-based byte offset into the source.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Argument outside the domain of an operation (point outside D_F or M, t outside [0, b), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Expression evaluation failed (log of non-positive value, division by zero, ...).
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double t)
      : Error(what + " at t = " + std::to_string(t)), t_(t) {}
  double t() const noexcept { return t_; }

 private:
  double t_;
};

// Metric or connection lost positive-definiteness (typically right at the boundary).
class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

}  // namespace hartogs
