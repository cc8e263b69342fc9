#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace connsync {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A graph failed validation; carries every violation found.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Malformed graph text. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Operand shapes do not match, or a size cap was exceeded.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// The eigensolver did not reach the residual contract.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual);
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A frustration ratio was requested for an identically zero field.
class ZeroFieldError : public Error {
 public:
  using Error::Error;
};

}  // namespace connsync
