#pragma once

#include <stdexcept>
#include <string>

namespace repstab {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition on an argument violated (size mismatch, out of range, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// V(lambda)_n requested with n < |lambda| + lambda_1.
class PaddingError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A class function whose multiplicity against some irreducible is not a
/// nonnegative integer.
class NotACharacterError : public Error {
 public:
  NotACharacterError(std::string lambda, std::string value)
      : Error("not a character: multiplicity of " + lambda + " is " + value),
        lambda_(std::move(lambda)),
        value_(std::move(value)) {}

  const std::string& lambda() const { return lambda_; }
  const std::string& value() const { return value_; }

 private:
  std::string lambda_;
  std::string value_;
};

/// A sequence was not eventually constant inside the supplied window.
class StabilizationError : public Error {
 public:
  StabilizationError(const std::string& what, std::string trace)
      : Error(what + "\n" + trace), trace_(std::move(trace)) {}
  const std::string& trace() const { return trace_; }

 private:
  std::string trace_;
};

/// A multiplicity changed inside the proven stable range.
class StabilityViolation : public Error {
 public:
  using Error::Error;
};

/// The two sides of a point-count identity disagree.
class CrossCheckFailure : public Error {
 public:
  using Error::Error;
};

/// A brute-force count disagrees with its closed form.
class IdentityViolation : public Error {
 public:
  using Error::Error;
};

/// A division that must be exact was not.
class FormulaViolation : public Error {
 public:
  using Error::Error;
};

/// Inconsistent functor data (functoriality or naturality broken).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Brute-force oracle asked for a size beyond its guard.
class CostGuardError : public Error {
 public:
  using Error::Error;
};

class CacheError : public Error {
 public:
  using Error::Error;
};

}  // namespace repstab
