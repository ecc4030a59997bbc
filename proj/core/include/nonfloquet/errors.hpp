#pragma once

#include <stdexcept>
#include <string>

namespace nonfloquet {

// Two families: configuration problems (bad input, unsupported parameters)
// and numerical failures (convergence, conditioning, branch cuts). The CLI
// maps them onto distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class InvalidInputError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class UnsupportedParametersError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class InsufficientHarmonicsError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class DomainError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class InvalidStateError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double condition_estimate)
      : NumericalError(what), condition_estimate_(condition_estimate) {}
  double condition_estimate() const noexcept { return condition_estimate_; }

 private:
  double condition_estimate_;
};

class SingularPropagatorError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IllConditionedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BranchCutError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class GaplessError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace nonfloquet
