#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nrics {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent shapes, grids, metadata or configuration values.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Background permittivity with zero modulus where a contrast is formed.
class DegenerateBackgroundError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A loaded or constructed value violates a type invariant.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Lesion disk does not sit inside breast tissue.
class PlacementError : public Error {
 public:
  using Error::Error;
};

/// Sparse factorization or solve failed.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Non-finite objective during the iterative inversion. Carries the objective
/// trace up to the failure.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::vector<double> trace = {})
      : Error(what), trace_(std::move(trace)) {}
  const std::vector<double>& trace() const noexcept { return trace_; }

 private:
  std::vector<double> trace_;
};

/// Power iteration did not settle on an operator norm.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// Wraps an error raised inside a named pipeline stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace nrics
