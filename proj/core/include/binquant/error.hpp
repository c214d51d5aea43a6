#pragma once

#include <stdexcept>
#include <string>

namespace binquant {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Result not representable as a finite double (e.g. Gamma(200), or a bound whose density underflowed).
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Iterative method hit its iteration cap before reaching the requested accuracy.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class UndefinedMomentError : public Error {
 public:
  using Error::Error;
};

/// The density has no derivative of the requested order at the given point.
class NonDifferentiableError : public Error {
 public:
  enum class Kind {
    undefined,          // kink: one-sided derivatives disagree
    negative_infinite,  // derivative diverges to -inf (GGD with 1 < beta < 2 at 0)
  };

  NonDifferentiableError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

/// Text input (model spec, grid, config file) failed to parse. `key()` names the offending key.
class ParseError : public Error {
 public:
  ParseError(std::string key, const std::string& what) : Error(what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Saturated Monte Carlo blocks exceeded the configured fraction.
class SaturationPolicyError : public Error {
 public:
  using Error::Error;
};

/// Not enough Monte Carlo runs to resolve the requested efficiency band.
class InsufficientRunsError : public Error {
 public:
  using Error::Error;
};

}  // namespace binquant
