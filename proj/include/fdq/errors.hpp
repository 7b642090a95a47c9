#pragma once

#include <stdexcept>
#include <string>

namespace fdq {

// Expression or file could not be parsed. Carries a byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, std::size_t position)
      : std::runtime_error(std::move(msg)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Well-formed input that violates a precondition (mode out of range,
// mismatched mode spaces, bad generator degrees, invalid configuration).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric computation failed (integrator instability, eigensolver
// non-convergence, trajectory blow-up).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fdq
