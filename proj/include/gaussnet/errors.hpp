#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gaussnet {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or vector has the wrong size for the requested operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Matrix violates a structural requirement (e.g. symmetry).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Invalid user-supplied parameter or channel/mode assignment.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Two SLH triples cannot be composed.
class CompositionError : public Error {
 public:
  using Error::Error;
};

/// Covariance matrix is outside the set of physical Gaussian states.
class UnphysicalCovarianceError : public Error {
 public:
  using Error::Error;
};

/// Closed-form and cascade constructions of the same network disagree.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Numerical failures. The CLI maps these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NoSteadyStateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DivergenceError : public NumericalError {
 public:
  DivergenceError(const std::string& what, double time)
      : NumericalError(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

class SolverError : public NumericalError {
 public:
  SolverError(const std::string& what, std::vector<double> residual_history)
      : NumericalError(what), residual_history_(std::move(residual_history)) {}
  const std::vector<double>& residual_history() const {
    return residual_history_;
  }

 private:
  std::vector<double> residual_history_;
};

}  // namespace gaussnet
