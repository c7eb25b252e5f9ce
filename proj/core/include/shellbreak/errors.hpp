#pragma once

#include <stdexcept>
#include <string>

namespace shellbreak {

/// Argument outside the mathematical domain of a function (x <= 0 for log_gamma, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A constant whose formula needs a larger space dimension than the one given.
class DimensionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Evaluation exactly at a point where the requested quantity does not exist.
class SingularPointError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Inadmissible problem parameters or option values.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InsufficientDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The weighted L^{p+1} functional vanishes on the grid (alpha too large for the mesh).
class DegenerateWeightError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative minimization hit its iteration cap.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, long iterations, double gradient_norm)
      : std::runtime_error(what + " (iterations=" + std::to_string(iterations) +
                           ", gradient norm=" + std::to_string(gradient_norm) + ")"),
        iterations_(iterations),
        gradient_norm_(gradient_norm) {}

  long iterations() const noexcept { return iterations_; }
  double gradient_norm() const noexcept { return gradient_norm_; }

 private:
  long iterations_;
  double gradient_norm_;
};

}  // namespace shellbreak
