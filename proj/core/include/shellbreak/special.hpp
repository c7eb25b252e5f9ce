#pragma once

// Gamma/Beta machinery. All Gamma ratios go through log_gamma differences so that
// arguments in the thousands (where Gamma itself overflows) stay finite.

namespace shellbreak {

/// ln Gamma(x) for x > 0. Lanczos (g = 7) below 15, Stirling series above.
double log_gamma(double x);

/// Gamma(a) Gamma(b) / Gamma(a + b).
double beta_fn(double a, double b);

/// Exact value of Gamma(alpha)/Gamma(alpha + beta_exp + 1) next to its large-alpha
/// equivalent alpha^{-beta_exp-1}.
struct GammaRatio {
  double alpha = 0.0;
  double beta_exp = 0.0;
  double exact = 0.0;
  double asymptotic = 0.0;

  double ratio() const { return exact / asymptotic; }
};

GammaRatio gamma_ratio(double alpha, double beta_exp);

/// sup_{0<r<1} r^eps |ln r|^{1/2} = (2 e eps)^{-1/2}, attained at r = exp(-1/(2 eps)).
double c_epsilon(double eps);

/// Maximizer of r^eps |ln r|^{1/2} on (0, 1).
double c_epsilon_argmax(double eps);

}  // namespace shellbreak
