// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace cubepack {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A vertex has the wrong dimension or a coordinate out of range.
class InvalidVertex : public Error {
 public:
  using Error::Error;
};

/// A placement map is malformed (wrong length, out of range, not injective).
class InvalidPlacement : public Error {
 public:
  using Error::Error;
};

/// A constructor parameter is invalid (e.g. even l where odd is required).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The host is too small for the requested construction. The message names
/// the minimum.
class SizingError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// A search or solver ran out of its node/cell budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Certificate or pattern text could not be parsed.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A codimension-1 intersection matched none of the four admissible shapes.
class ClassificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace cubepack
