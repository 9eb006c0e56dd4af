#pragma once

#include <stdexcept>
#include <string>

namespace bosejump {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function (poles, cuts, x < 0).
class DomainError : public Error {
  public:
    using Error::Error;
};

// Rejected configuration: bad grid sizes, tolerances, alpha out of range.
class ConfigError : public Error {
  public:
    using Error::Error;
};

class RangeError : public Error {
  public:
    using Error::Error;
};

class DivergenceError : public Error {
  public:
    using Error::Error;
};

class ConsistencyError : public Error {
  public:
    using Error::Error;
};

class ResolutionError : public Error {
  public:
    using Error::Error;
};

class SolverError : public Error {
  public:
    using Error::Error;
};

class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string& what, int iterations, double residual)
        : Error(what), iterations_(iterations), residual_(residual) {}
    int iterations() const { return iterations_; }
    double residual() const { return residual_; }

  private:
    int iterations_;
    double residual_;
};

class ExtractionError : public Error {
  public:
    using Error::Error;
};

// Adaptive quadrature gave up; the best estimate is still available.
class AccuracyError : public Error {
  public:
    AccuracyError(const std::string& what, double estimate, double bound)
        : Error(what), estimate_(estimate), bound_(bound) {}
    double estimate() const { return estimate_; }
    double bound() const { return bound_; }

  private:
    double estimate_;
    double bound_;
};

}  // namespace bosejump
