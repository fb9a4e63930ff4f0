#ifndef BERGMAN_ERRORS_HPP
#define BERGMAN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bergman {

/// Base class of everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad caller input: invalid parameter values, malformed specs, bounds
/// violations. These map to configuration failures at the CLI level.
class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

class BoundsError : public InvalidParameterError {
 public:
  using InvalidParameterError::InvalidParameterError;
};

class SizeError : public InvalidParameterError {
 public:
  using InvalidParameterError::InvalidParameterError;
};

class InsufficientDataError : public InvalidParameterError {
 public:
  using InvalidParameterError::InvalidParameterError;
};

/// A coefficient violates its model constraint (|alpha| >= 1, a <= 0, ...).
/// Carries the offending sequence index.
class InvalidCoefficientError : public InvalidParameterError {
 public:
  InvalidCoefficientError(const std::string& what, std::size_t index)
      : InvalidParameterError(what + " (index " + std::to_string(index) + ")"),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Numerical failures: these map to exit code 3 at the CLI level.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A requested entry of a full-matrix power depends on indices beyond the
/// truncation size, so the value would be contaminated by the cut.
class ContaminationError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Evaluation point is (numerically) a zero of P_n.
class PoleError : public NumericError {
 public:
  using NumericError::NumericError;
};

class DegenerateMeasureError : public NumericError {
 public:
  DegenerateMeasureError(const std::string& what, std::size_t degree)
      : NumericError(what + " (degree " + std::to_string(degree) + ")"),
        degree_(degree) {}
  std::size_t degree() const noexcept { return degree_; }

 private:
  std::size_t degree_;
};

class EigensolverError : public NumericError {
 public:
  using NumericError::NumericError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace bergman

#endif  // BERGMAN_ERRORS_HPP
