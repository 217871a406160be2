#pragma once

#include <stdexcept>
#include <string>

namespace sympsig {

// Base class for all library errors. Subclasses distinguish validation
// failures (bad input) from numerical failures (non-convergence), which the
// CLI maps to different exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// An eigenvalue sits too close to the unit circle (or to +-1) to classify
// reliably. Classification drives formula selection downstream, so we refuse
// rather than guess.
class AmbiguityError : public Error {
 public:
  using Error::Error;
};

class ClassificationError : public Error {
 public:
  using Error::Error;
};

class CompatibilityError : public Error {
 public:
  using Error::Error;
};

class SingularActionError : public Error {
 public:
  using Error::Error;
};

class PotentialSingularityError : public Error {
 public:
  using Error::Error;
};

class UnsupportedHolonomyError : public Error {
 public:
  using Error::Error;
};

class InconsistencyError : public Error {
 public:
  using Error::Error;
};

// Quadrature or extrapolation failed to reach the requested tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& msg, double estimate)
      : Error(msg), error_estimate(estimate) {}
  double error_estimate;
};

// 2T + rho failed to land near an integer.
class IntegralityError : public Error {
 public:
  IntegralityError(const std::string& msg, double residual)
      : Error(msg), residual(residual) {}
  double residual;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line = -1) : Error(format(msg, line)), line(line) {}
  int line;

 private:
  static std::string format(const std::string& msg, int line) {
    if (line < 0) return msg;
    return "line " + std::to_string(line) + ": " + msg;
  }
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace sympsig
