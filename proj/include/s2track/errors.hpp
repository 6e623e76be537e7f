#pragma once

#include <stdexcept>
#include <string>

namespace s2track {

/// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix handed to vee() is not skew-symmetric within tolerance.
class NotSkewError : public Error {
 public:
  using Error::Error;
};

/// Matrix cannot be projected onto a rotation (non-positive or tiny determinant).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Pointing directions are (numerically) antipodal; the error geometry is
/// singular there and the controller's domain excludes it.
class AntipodalError : public Error {
 public:
  using Error::Error;
};

/// Inertia matrix is not symmetric positive definite at tolerance.
class SingularInertiaError : public Error {
 public:
  using Error::Error;
};

/// Gain structure violates the required sum decomposition.
class InvalidGainError : public Error {
 public:
  using Error::Error;
};

/// Certificate quantities are undefined for these gains/bounds.
class NotCertifiableError : public Error {
 public:
  using Error::Error;
};

/// Finite-difference monitor needs at least three samples.
class TooFewSamplesError : public Error {
 public:
  using Error::Error;
};

/// A simulation run left its admissible domain (antipodal or non-finite state).
class SimulationAbort : public Error {
 public:
  SimulationAbort(const std::string& what, double t_last)
      : Error(what), t_last_(t_last) {}
  double t_last() const { return t_last_; }

 private:
  double t_last_;
};

/// Config text could not be parsed; message carries line/column.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Config parsed but a field violates its constraint; message names the field.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace s2track
