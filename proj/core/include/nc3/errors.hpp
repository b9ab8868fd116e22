#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nc3 {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

class InvalidDomainError : public Error {
 public:
  using Error::Error;
};

class OutOfDomainError : public Error {
 public:
  using Error::Error;
};

class EmptySpaceError : public Error {
 public:
  using Error::Error;
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Gauss-point values that no member of the local space can interpolate.
class InconsistentValuesError : public Error {
 public:
  InconsistentValuesError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Failure of the iterative solver. `history` holds the preconditioned
/// residual norm after every iteration.
class SolverError : public Error {
 public:
  enum class Kind { NonConvergence, Indefinite, Stagnation };

  SolverError(Kind kind, const std::string& what, std::vector<double> history)
      : Error(what), kind_(kind), history_(std::move(history)) {}

  Kind kind() const noexcept { return kind_; }
  const std::vector<double>& history() const noexcept { return history_; }

 private:
  Kind kind_;
  std::vector<double> history_;
};

}  // namespace nc3
