#pragma once

#include <stdexcept>
#include <string>

namespace thales {

/// Malformed user input (bad literal, zero denominator, duplicate seed, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Division by zero or square root of a negative value.
class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Coincident or collinear points where a proper configuration is required.
class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point that was required to lie on a curve does not.
class IncidenceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A file that cannot be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Broken internal ordering or bookkeeping; always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace thales
