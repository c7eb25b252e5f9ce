#pragma once

#include <optional>
#include <utility>

namespace shellbreak {

/// One instance of  -Δu = V(|x|) |u|^{p-1} u  in the unit ball of R^N, u = 0 on the sphere,
/// with the shell weight
///   V(r) = (1 - r/R)^alpha            for r < R,
///   V(r) = (1 - (1-r)/(1-R))^alpha    for r >= R,
/// and the endpoint conventions V = r^alpha (R = 0), V = (1-r)^alpha (R = 1).
struct ProblemParams {
  int N = 3;
  double p = 2.0;
  double R = 0.0;
  double alpha = 0.0;

  /// Throws ParameterError unless N >= 1, p > 1 (and Sobolev-subcritical for N >= 3),
  /// R in [0, 1] and alpha >= 0.
  void validate() const;

  friend bool operator==(const ProblemParams&, const ProblemParams&) = default;
};

/// True iff p is in the superlinear subcritical range for dimension N.
bool is_subcritical(int N, double p);

/// |S^{N-1}| = 2 pi^{N/2} / Gamma(N/2); equals 2 for N = 1.
double sphere_area(int N);

/// Exponent gamma in S_alpha ≍ alpha^gamma, i.e. 2N/(p+1) - (N-2).
double growth_exponent(int N, double p);

double eval_V(const ProblemParams& params, double r);

/// Derivative of V in r. At the shell r = R: 0 for alpha > 1, SingularPointError otherwise
/// (see V_prime_jump for the one-sided values when alpha = 1).
double eval_V_prime(const ProblemParams& params, double r);

/// One-sided derivatives (left, right) of V at the shell r = R, R in (0, 1).
std::pair<double, double> V_prime_jump(const ProblemParams& params);

/// Exact ∫_B V(|x|) dx by Beta-function expansion.
double integral_V(const ProblemParams& params);

/// R^{β+1} Γ(α)Γ(β+1)/Γ(α+β+1) = ∫_0^R (1 - r/R)^{α-1} r^β dr.
double I_R(const ProblemParams& params, double beta_exp);

/// Closed-form constants of the radial estimates for a given (N, p).
struct EstimateConstants {
  int N = 0;
  double p = 0.0;
  double beta_exp = 0.0;            ///< N - 1 - (p+1)(N-2)/2
  std::optional<double> K;          ///< N >= 3
  std::optional<double> K_star;     ///< upper boundary-flux constant, N >= 2
  std::optional<double> K_lower;    ///< lower boundary-flux constant, N >= 3
  double sphere_area = 0.0;
  std::optional<double> R0;         ///< only when a Sobolev constant was supplied
};

EstimateConstants compute_constants(int N, double p);

/// compute_constants plus the symmetry-breaking radius R0 for the given Sobolev constant S.
EstimateConstants compute_constants(int N, double p, double S);

/// K(N,p) = (N-2)^{-(p+1)/2} |S^{N-1}|^{(1-p)/2} Γ(N - (p+1)(N-2)/2). N >= 3.
double constant_K(int N, double p);

/// K_*(N,p) = 2^{(p+3)/2}(p+1)^{(p-1)/2}[(p-1)(N-2)]^{-(p+1)/2}|S^{N-1}|^{(1-p)/2}Γ(β+1). N >= 3.
double constant_K_lower(int N, double p);

/// Planar counterpart of K_*: 4 π^{(1-p)/2}(p+1)^{(p-1)/2}(p-1)^{-(p+1)/2} Γ(β+1) c_ε^{p+1},
/// with β = 1 - (p+1)ε, 0 < ε < 2/(p+1).
double constant_K_lower_planar(double p, double eps);

/// K^*(N,p) = |S^{N-1}|^{(1-p)/(p+1)} (2(p+1)/(p-1))^{2p/(p+1)}. N >= 2.
double constant_K_star(int N, double p);

/// β used by the lower flux estimate: N - 1 - (p+1)(N-2)/2 for N >= 3, 1 - (p+1)ε for N = 2.
double lower_beta_exp(int N, double p, double eps);

/// Radius below which groundstates break symmetry for large alpha (N >= 3).
double R0(int N, double p, double S);

/// min{e^{4/(R(p+1))}, e^{4/((1-R)(p+1))}}, i.e. e^{4/((p+1) max(R, 1-R))}. R = 0 or 1 give e^{4/(p+1)}.
double shell_exponential_factor(double R, double p);

/// Strict inequality R^{2N/(p+1)-(N-2)} min{…} < K^{-2/(p+1)} S^{-1}; true for R = 0.
bool condition_check(const ProblemParams& params, double S);

/// (N-2)|S^{N-1}|^{(p-1)/(p+1)} Γ(N-(p+1)(N-2)/2)^{-2/(p+1)} e^{-4/(p+1)} <= S(N,p).
double sobolev_lower_bound(int N, double p);

}  // namespace shellbreak
