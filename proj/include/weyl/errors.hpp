#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace weyl {

/// Raised when a rational function is evaluated where its denominator vanishes.
class EvaluationAtPole : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operator has a derivative outside the requested truncation.
class DegreeExceeded : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class ZeroOperator : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inputs that violate a documented precondition (non-polynomial rows, wrong dims, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested jet order is below the maximal degree of the basis.
class SBelowS0 : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Syntax errors carry the byte offset into the parsed text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        message_(what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t position_;
};

}  // namespace weyl
