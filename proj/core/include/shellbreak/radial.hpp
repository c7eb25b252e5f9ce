#pragma once

#include <span>
#include <vector>

#include "shellbreak/mesh.hpp"
#include "shellbreak/minimizer.hpp"
#include "shellbreak/options.hpp"
#include "shellbreak/weight.hpp"

namespace shellbreak {

/// Graded mesh 0 = r_0 < ... < r_{n-1} = 1 for radial functions in dimension N. The shell
/// r = R is never a node when R is in (0, 1).
struct RadialGrid {
  int N = 3;
  double shell = 0.0;
  double grading_strength = 0.0;
  GradedMap map;
  std::vector<double> nodes;
  /// ∫_0^1 hat_i(r) r^{N-1} dr for every node; they sum to 1/N.
  std::vector<double> measure_weights;

  std::size_t size() const { return nodes.size(); }
  double max_spacing() const;
  double min_distance_to_shell() const;
};

/// Nodes cluster near r = 1, near r = 0 (when R > 0) and around the shell, with cluster widths
/// proportional to 1/alpha. grading_strength = 0 gives a uniform mesh.
RadialGrid build_radial_grid(const ProblemParams& params, int n, double grading_strength = 2.0);

/// Nested refinement with 2n - 1 nodes (same map, midpoints in the computational coordinate).
RadialGrid refine(const RadialGrid& grid);

struct RadialProfile {
  RadialGrid grid;
  std::vector<double> values;  ///< one per node, values.back() == 0
};

/// Identity residuals and inequality slacks of a radial groundstate. Slacks are RHS - LHS of
/// each inequality in absolute terms; NaN where the inequality does not apply (dimension).
struct DiagnosticReport {
  double nehari_residual = 0.0;    ///< (∫V u^{p+1} - 2(p+1)/(p-1) C) / ∫V u^{p+1}
  double pohozaev_residual = 0.0;  ///< (flux - Pohozaev right-hand side) / flux
  double ni_violation = 0.0;       ///< max(0, max_i |u_i| - Ni bound(r_i)), N >= 3
  double boundary_flux = 0.0;      ///< |S^{N-1}| u'(1)^2
  double lemma1_slack = 0.0;       ///< B_alpha - flux
  double lemma2_slack = 0.0;       ///< flux - (Pohozaev lower bound)
  double lemma3_slack = 0.0;       ///< A_alpha + B_alpha - (2(N+α)/(p+1) - (N-2)) (2(p+1)/(p-1)) C
  double A_alpha = 0.0;
  double B_alpha = 0.0;
  double planar_eps = 0.0;         ///< ε used by the logarithmic estimate when N = 2
};

struct RadialResult {
  double S_rad = 0.0;
  double C_rad = 0.0;
  RadialProfile profile;  ///< u_rad = S_rad^{1/(p-1)} u*, with ∫V |u*|^{p+1} = 1
  double beta_peak = 0.0;
  double s_peak = 0.0;
  DiagnosticReport residuals;
  long iterations = 0;
  double gradient_norm = 0.0;
  int quad_order = 4;
};

/// P1 finite elements on a RadialGrid: exact stiffness, Gauss quadrature (split at the shell)
/// for the weighted power integral. Unknowns are the values at r_0 .. r_{n-2}.
class RadialProblem : public QuotientProblem {
 public:
  RadialProblem(const ProblemParams& params, const RadialGrid& grid, int quad_order);

  std::size_t size() const override { return nodes_.size() - 1; }
  double exponent() const override { return params_.p; }
  void apply_stiffness(std::span<const double> u, std::span<double> out) const override;
  void solve_stiffness(std::span<const double> rhs, std::span<double> out) const override;
  double power_integral(std::span<const double> u, std::span<double> grad) const override;

  /// ∫_B V(|x|) dx as seen by the quadrature.
  double weight_integral() const;
  /// ∫_B V'(|x|)|x| |u|^{p+1} dx.
  double pohozaev_integral(std::span<const double> u) const;
  /// Consistent weighted mass  M_ij = ∫ V φ_i φ_j  as (diagonal, superdiagonal).
  std::pair<std::vector<double>, std::vector<double>> weighted_mass() const;
  const std::vector<double>& stiffness_diagonal() const { return diag_; }
  const std::vector<double>& stiffness_offdiagonal() const { return off_; }

 private:
  struct Point {
    std::size_t elem;
    double t;
    double c;        // |S^{N-1}| w r^{N-1} V(r)
    double c_prime;  // |S^{N-1}| w r^{N-1} V'(r) r
  };

  ProblemParams params_;
  std::vector<double> nodes_;
  std::vector<double> diag_, off_;       // stiffness on the unknowns
  std::vector<double> chol_d_, chol_l_;  // K = L D L^T
  std::vector<Point> points_;
};

/// Discrete radial quotient of an arbitrary profile (values per node, last one ignored).
double radial_quotient(const ProblemParams& params, const RadialGrid& grid, std::span<const double> values,
                       int quad_order = 4);

RadialResult minimize_radial_quotient(const ProblemParams& params, const RadialGrid& grid,
                                      const SolveOptions& opts = {});

DiagnosticReport diagnostics(const ProblemParams& params, const RadialResult& result);

/// First eigenvalue of -Δu = λ (1-|x|)^alpha u among radial functions (p = 1, R = 1).
double eigen_lower_bound_p1(const ProblemParams& params, const RadialGrid& grid, int quad_order = 4);

/// Value of u'(1) from the last three nodes (one-sided second-order difference).
double boundary_derivative(std::span<const double> nodes, std::span<const double> values);

}  // namespace shellbreak
