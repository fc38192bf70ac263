#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tdiff {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class NoPath : public Error {
 public:
  using Error::Error;
};

// Raised when an operation needs a connected graph (diameter, glue).
class DisconnectedGraph : public Error {
 public:
  using Error::Error;
};

// recover_seedset on a sequence whose time prefixes are not connected.
class NotConnected : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class BadParameters : public Error {
 public:
  using Error::Error;
};

class UncoverableUniverse : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  using Error::Error;
};

class IterationLimit : public Error {
 public:
  IterationLimit(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  /// Largest flow-constraint violation left when the loop stopped.
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace tdiff
