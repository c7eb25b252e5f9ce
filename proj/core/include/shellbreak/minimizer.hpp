#pragma once

#include <span>
#include <vector>

#include "shellbreak/options.hpp"

namespace shellbreak {

/// A discrete Rayleigh-type quotient  Q(u) = (u·Ku) / P(u)^{2/(p+1)}  with K symmetric positive
/// definite (the Dirichlet energy) and P(u) = ∫ V |u|^{p+1} evaluated by quadrature.
class QuotientProblem {
 public:
  virtual ~QuotientProblem() = default;

  virtual std::size_t size() const = 0;
  virtual double exponent() const = 0;

  virtual void apply_stiffness(std::span<const double> u, std::span<double> out) const = 0;
  virtual void solve_stiffness(std::span<const double> rhs, std::span<double> out) const = 0;

  /// P(u); fills dP/du when `grad` is non-empty.
  virtual double power_integral(std::span<const double> u, std::span<double> grad) const = 0;

  double energy(std::span<const double> u) const;
  double quotient(std::span<const double> u) const;
};

struct MinimizeOutcome {
  std::vector<double> u;  ///< minimizer normalized to P(u) = 1, nonnegative
  double quotient = 0.0;
  long iterations = 0;
  double gradient_norm = 0.0;
  bool converged = false;
};

/// Projected gradient descent for Q on {P = 1} in the energy metric (the step direction is
/// u - (E/(p+1)) K^{-1} ∇P), Barzilai–Borwein step lengths with a non-monotone Armijo
/// safeguard, renormalization and |·| after every step.
/// Throws DegenerateWeightError when P(start) == 0 and SolverError after max_iter steps.
MinimizeOutcome minimize_quotient(const QuotientProblem& problem, std::vector<double> start,
                                  const SolveOptions& opts);

}  // namespace shellbreak
