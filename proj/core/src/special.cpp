#include "shellbreak/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "shellbreak/errors.hpp"

namespace shellbreak {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;

// Lanczos coefficients for g = 7, n = 9.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_log_gamma(double x) {
  // Gamma(z + 1) = sqrt(2 pi) t^{z + 1/2} e^{-t} A(z), z = x - 1, t = z + g + 1/2.
  const double z = x - 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + 7.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(sum);
}

// Σ_{k=1..6} B_{2k} / (2k (2k-1) x^{2k-1}), the tail of Stirling's series.
double stirling_correction(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return inv * (1.0 / 12.0 +
                inv2 * (-1.0 / 360.0 +
                        inv2 * (1.0 / 1260.0 +
                                inv2 * (-1.0 / 1680.0 + inv2 * (1.0 / 1188.0 + inv2 * (-691.0 / 360360.0))))));
}

double stirling_log_gamma(double x) { return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + stirling_correction(x); }

// ln Γ(a) + ln Γ(b) - ln Γ(a+b) for a, b >= 15, with the large Stirling terms combined so that
// they do not cancel: (a-1/2) ln(a/c) + (b-1/2) ln(b/c) - ln(c)/2, c = a + b.
double stirling_log_beta(double a, double b) {
  const double c = a + b;
  return kHalfLog2Pi - (a - 0.5) * std::log1p(b / a) - (b - 0.5) * std::log1p(a / b) - 0.5 * std::log(c) +
         stirling_correction(a) + stirling_correction(b) - stirling_correction(c);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be positive and finite, got " + std::to_string(x));
  }
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - lanczos_log_gamma(1.0 - x);
  }
  if (x < 15.0) return lanczos_log_gamma(x);
  return stirling_log_gamma(x);
}

double beta_fn(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("beta_fn: arguments must be positive");
  }
  // Small integer argument: B(a, m) = (m-1)! / (a (a+1) ... (a+m-1)), exact up to rounding.
  if (a < b) std::swap(a, b);
  if (b <= 64.0 && b == std::floor(b)) {
    double prod = 1.0 / a;
    for (int j = 1; j < static_cast<int>(b); ++j) prod *= j / (a + j);
    return prod;
  }
  // Shift both arguments into the Stirling range with B(a, b) = B(a+1, b) (a+b) / a.
  double factor = 1.0;
  while (b < 15.0) {
    factor *= (a + b) / b;
    b += 1.0;
  }
  while (a < 15.0) {
    factor *= (a + b) / a;
    a += 1.0;
  }
  return factor * std::exp(stirling_log_beta(a, b));
}

GammaRatio gamma_ratio(double alpha, double beta_exp) {
  if (!(alpha > 0.0) || !(alpha + beta_exp + 1.0 > 0.0)) {
    throw DomainError("gamma_ratio: need alpha > 0 and alpha + beta + 1 > 0");
  }
  GammaRatio out;
  out.alpha = alpha;
  out.beta_exp = beta_exp;
  out.exact = std::exp(log_gamma(alpha) - log_gamma(alpha + beta_exp + 1.0));
  out.asymptotic = std::exp(-(beta_exp + 1.0) * std::log(alpha));
  return out;
}

double c_epsilon(double eps) {
  if (!(eps > 0.0)) throw DomainError("c_epsilon: eps must be positive");
  return 1.0 / std::sqrt(2.0 * std::numbers::e * eps);
}

double c_epsilon_argmax(double eps) {
  if (!(eps > 0.0)) throw DomainError("c_epsilon_argmax: eps must be positive");
  return std::exp(-1.0 / (2.0 * eps));
}

}  // namespace shellbreak
