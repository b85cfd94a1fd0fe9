#pragma once

#include <stdexcept>
#include <string>

namespace hhkit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments outside the operation's domain (a >= b, nonpositive exponent, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A weight took a negative value; `witness` is the offending parameter.
class NegativeWeightError : public Error {
 public:
  NegativeWeightError(const std::string& what, double witness)
      : Error(what), witness_(witness) {}
  double witness() const noexcept { return witness_; }

 private:
  double witness_;
};

class NonNormalizableError : public Error {
 public:
  using Error::Error;
};

/// An error profile has no finite supremum on the requested radius range.
class UnboundedProfileError : public Error {
 public:
  using Error::Error;
};

/// A series required to converge failed its Cauchy test within budget.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// A negative atom was supplied where a nonnegative measure is required.
class SignError : public Error {
 public:
  using Error::Error;
};

class DegenerateDenominatorError : public Error {
 public:
  using Error::Error;
};

/// A test-function generator failed its own internal verification.
class GeneratorError : public Error {
 public:
  using Error::Error;
};

}  // namespace hhkit
