#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fjopt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Input is well-formed but violates a structural rule (self-arc, range, size).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument does not hold (k out of range, bad epsilon).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The problem is too large for the requested dense or exhaustive method.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Fixed-point iteration hit its iteration cap. Carries the last iterate.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> last,
                      std::size_t iterations, double last_change)
      : Error(what),
        last_iterate(std::move(last)),
        iterations(iterations),
        last_change(last_change) {}

  std::vector<double> last_iterate;
  std::size_t iterations;
  double last_change;
};

/// The forest sampler exceeded its step budget.
class SamplerError : public Error {
 public:
  using Error::Error;
};

}  // namespace fjopt
