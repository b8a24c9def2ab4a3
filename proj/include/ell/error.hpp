#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ell {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ExponentOverflow : public Error {
 public:
  ExponentOverflow() : Error("exponent overflow") {}
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class NegativePowerAtZero : public Error {
 public:
  using Error::Error;
};

/// A denominator factor vanishes when an Omega variable is set to 1.
class DivergentAtUnity : public Error {
 public:
  using Error::Error;
};

class ZeroZWithNegativePower : public Error {
 public:
  using Error::Error;
};

class NotCoprime : public Error {
 public:
  using Error::Error;
};

/// Internal consistency violation in the group recurrence.
class ExactDivisionFailed : public Error {
 public:
  using Error::Error;
};

class NotExpandable : public Error {
 public:
  using Error::Error;
};

class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

class BoundMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

/// A denominator factor is not a difference of two monomials.
class NotElliott : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ell
