#include "shellbreak/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "shellbreak/errors.hpp"
#include "shellbreak/special.hpp"

namespace shellbreak {

namespace {

// base^a for base in [0, 1]. Large exponents go through the logarithm and flush to 0
// below exp(-745).
double unit_power(double base, double a) {
  if (a == 0.0) return 1.0;
  if (base <= 0.0) return a > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  if (base >= 1.0) return 1.0;
  if (a > 50.0) {
    const double v = a * std::log(base);
    return v < -745.0 ? 0.0 : std::exp(v);
  }
  return std::pow(base, a);
}

std::string describe(const ProblemParams& params) {
  std::ostringstream os;
  os << "(N=" << params.N << ", p=" << params.p << ", R=" << params.R << ", alpha=" << params.alpha << ")";
  return os.str();
}

void require_dimension(int N, int min_dim, const char* what) {
  if (N < min_dim) {
    throw DimensionError(std::string(what) + " requires N >= " + std::to_string(min_dim) + ", got N = " +
                         std::to_string(N));
  }
}

void require_subcritical(int N, double p, const char* what) {
  if (!is_subcritical(N, p)) {
    std::ostringstream os;
    os << what << " requires 1 < p < (N+2)/(N-2); got N = " << N << ", p = " << p;
    throw DomainError(os.str());
  }
}

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  return out;
}

}  // namespace

bool is_subcritical(int N, double p) {
  if (!(p > 1.0) || !std::isfinite(p)) return false;
  if (N >= 3) return p < static_cast<double>(N + 2) / static_cast<double>(N - 2);
  return N >= 1;
}

void ProblemParams::validate() const {
  if (N < 1) throw ParameterError("dimension N must be >= 1, got " + std::to_string(N));
  if (!(p > 1.0) || !std::isfinite(p)) throw ParameterError("exponent p must be > 1 " + describe(*this));
  if (N >= 3 && !(p < static_cast<double>(N + 2) / static_cast<double>(N - 2))) {
    throw ParameterError("exponent p must be Sobolev-subcritical, p < (N+2)/(N-2) " + describe(*this));
  }
  if (!(R >= 0.0 && R <= 1.0)) throw ParameterError("shell radius R must lie in [0, 1] " + describe(*this));
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be >= 0 " + describe(*this));
}

double sphere_area(int N) {
  require_dimension(N, 1, "sphere_area");
  if (N == 1) return 2.0;
  if (N == 2) return 2.0 * std::numbers::pi;
  if (N == 3) return 4.0 * std::numbers::pi;
  const double half = 0.5 * static_cast<double>(N);
  return 2.0 * std::exp(half * std::log(std::numbers::pi) - log_gamma(half));
}

double growth_exponent(int N, double p) {
  return 2.0 * static_cast<double>(N) / (p + 1.0) - static_cast<double>(N - 2);
}

double eval_V(const ProblemParams& params, double r) {
  r = std::clamp(r, 0.0, 1.0);
  const double a = params.alpha;
  if (params.R <= 0.0) return unit_power(r, a);
  if (params.R >= 1.0) return unit_power(1.0 - r, a);
  if (r < params.R) return unit_power(1.0 - r / params.R, a);
  return unit_power((r - params.R) / (1.0 - params.R), a);
}

std::pair<double, double> V_prime_jump(const ProblemParams& params) {
  if (!(params.R > 0.0 && params.R < 1.0)) throw ParameterError("V_prime_jump: shell radius must lie in (0, 1)");
  const double a = params.alpha;
  if (a == 0.0) return {0.0, 0.0};
  if (a > 1.0) return {0.0, 0.0};
  if (a == 1.0) return {-1.0 / params.R, 1.0 / (1.0 - params.R)};
  const double inf = std::numeric_limits<double>::infinity();
  return {-inf, inf};
}

double eval_V_prime(const ProblemParams& params, double r) {
  const double a = params.alpha;
  if (a == 0.0) return 0.0;
  const double R = params.R;
  auto singular = [&](const char* where) -> double {
    std::ostringstream os;
    os << "V' is undefined at " << where << " r = " << r << " for alpha = " << a;
    if (a == 1.0 && R > 0.0 && R < 1.0) {
      const auto [left, right] = V_prime_jump(params);
      os << " (one-sided values " << left << ", " << right << ")";
    }
    throw SingularPointError(os.str());
  };
  if (R <= 0.0) {
    if (r <= 0.0) {
      if (a > 1.0) return 0.0;
      if (a == 1.0) return 1.0;
      return singular("the origin");
    }
    return a * std::pow(r, a - 1.0);
  }
  if (R >= 1.0) {
    if (r >= 1.0) {
      if (a > 1.0) return 0.0;
      if (a == 1.0) return -1.0;
      return singular("the boundary");
    }
    return -a * (a - 1.0 > 50.0 ? unit_power(1.0 - r, a - 1.0) : std::pow(1.0 - r, a - 1.0));
  }
  if (r == R) {
    if (a > 1.0) return 0.0;
    return singular("the shell");
  }
  if (r < R) {
    const double base = 1.0 - r / R;
    return -(a / R) * (a - 1.0 > 50.0 ? unit_power(base, a - 1.0) : std::pow(base, a - 1.0));
  }
  const double base = (r - R) / (1.0 - R);
  return (a / (1.0 - R)) * (a - 1.0 > 50.0 ? unit_power(base, a - 1.0) : std::pow(base, a - 1.0));
}

double integral_V(const ProblemParams& params) {
  const int N = params.N;
  const double a = params.alpha;
  const double R = params.R;
  double inner = 0.0;
  if (R > 0.0) inner = std::pow(R, N) * beta_fn(a + 1.0, static_cast<double>(N));
  double outer = 0.0;
  if (R < 1.0) {
    for (int k = 0; k <= N - 1; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      outer += sign * binomial(N - 1, k) * std::pow(1.0 - R, k + 1) * beta_fn(a + 1.0, k + 1.0);
    }
  }
  return sphere_area(N) * (inner + outer);
}

double I_R(const ProblemParams& params, double beta_exp) {
  if (!(params.alpha > 0.0)) throw DomainError("I_R: alpha must be positive");
  if (!(beta_exp > -1.0)) throw DomainError("I_R: beta must exceed -1");
  if (params.R <= 0.0) return 0.0;
  const double log_beta =
      log_gamma(params.alpha) + log_gamma(beta_exp + 1.0) - log_gamma(params.alpha + beta_exp + 1.0);
  return std::exp((beta_exp + 1.0) * std::log(params.R) + log_beta);
}

double constant_K(int N, double p) {
  require_dimension(N, 3, "K(N,p)");
  require_subcritical(N, p, "K(N,p)");
  const double beta1 = static_cast<double>(N) - (p + 1.0) * static_cast<double>(N - 2) / 2.0;
  return std::exp(-(p + 1.0) / 2.0 * std::log(static_cast<double>(N - 2)) +
                  (1.0 - p) / 2.0 * std::log(sphere_area(N)) + log_gamma(beta1));
}

double constant_K_lower(int N, double p) {
  require_dimension(N, 3, "K_*(N,p)");
  require_subcritical(N, p, "K_*(N,p)");
  const double beta1 = static_cast<double>(N) - (p + 1.0) * static_cast<double>(N - 2) / 2.0;
  return std::exp((p + 3.0) / 2.0 * std::log(2.0) + (p - 1.0) / 2.0 * std::log(p + 1.0) -
                  (p + 1.0) / 2.0 * std::log((p - 1.0) * static_cast<double>(N - 2)) +
                  (1.0 - p) / 2.0 * std::log(sphere_area(N)) + log_gamma(beta1));
}

double constant_K_lower_planar(double p, double eps) {
  if (!(p > 1.0)) throw DomainError("planar K_*: p must exceed 1");
  if (!(eps > 0.0 && eps < 2.0 / (p + 1.0))) throw DomainError("planar K_*: need 0 < eps < 2/(p+1)");
  const double beta = 1.0 - (p + 1.0) * eps;
  return 4.0 * std::exp((1.0 - p) / 2.0 * std::log(std::numbers::pi) + (p - 1.0) / 2.0 * std::log(p + 1.0) -
                        (p + 1.0) / 2.0 * std::log(p - 1.0) + log_gamma(beta + 1.0) +
                        (p + 1.0) * std::log(c_epsilon(eps)));
}

double constant_K_star(int N, double p) {
  require_dimension(N, 2, "K^*(N,p)");
  if (!(p > 1.0)) throw DomainError("K^*(N,p): p must exceed 1");
  return std::exp((1.0 - p) / (p + 1.0) * std::log(sphere_area(N)) +
                  2.0 * p / (p + 1.0) * std::log(2.0 * (p + 1.0) / (p - 1.0)));
}

double lower_beta_exp(int N, double p, double eps) {
  if (N == 2) return 1.0 - (p + 1.0) * eps;
  return static_cast<double>(N) - 1.0 - (p + 1.0) * static_cast<double>(N - 2) / 2.0;
}

EstimateConstants compute_constants(int N, double p) {
  require_dimension(N, 1, "compute_constants");
  if (!is_subcritical(N, p)) require_subcritical(N, p, "compute_constants");
  EstimateConstants c;
  c.N = N;
  c.p = p;
  c.beta_exp = static_cast<double>(N) - 1.0 - (p + 1.0) * static_cast<double>(N - 2) / 2.0;
  c.sphere_area = sphere_area(N);
  if (N >= 2) c.K_star = constant_K_star(N, p);
  if (N >= 3) {
    c.K = constant_K(N, p);
    c.K_lower = constant_K_lower(N, p);
  }
  return c;
}

EstimateConstants compute_constants(int N, double p, double S) {
  EstimateConstants c = compute_constants(N, p);
  if (N >= 3) c.R0 = R0(N, p, S);
  return c;
}

double R0(int N, double p, double S) {
  require_dimension(N, 3, "R0");
  const double denom = 2.0 * static_cast<double>(N) - (p + 1.0) * static_cast<double>(N - 2);
  if (!(denom > 0.0)) throw DomainError("R0: exponent is singular at or above the critical exponent");
  if (!(S > 0.0)) throw DomainError("R0: Sobolev constant must be positive");
  const double K = constant_K(N, p);
  const double base_log = -8.0 / (p + 1.0) - 2.0 / (p + 1.0) * std::log(K) - std::log(S);
  return std::exp((p + 1.0) / denom * base_log);
}

double shell_exponential_factor(double R, double p) {
  const double far = std::max(R, 1.0 - R);
  return std::exp(4.0 / ((p + 1.0) * far));
}

bool condition_check(const ProblemParams& params, double S) {
  require_dimension(params.N, 3, "condition_check");
  if (params.R <= 0.0) return true;
  const double lhs =
      std::pow(params.R, growth_exponent(params.N, params.p)) * shell_exponential_factor(params.R, params.p);
  const double rhs = std::pow(constant_K(params.N, params.p), -2.0 / (params.p + 1.0)) / S;
  return lhs < rhs;
}

double sobolev_lower_bound(int N, double p) {
  require_dimension(N, 3, "sobolev_lower_bound");
  require_subcritical(N, p, "sobolev_lower_bound");
  const double beta1 = static_cast<double>(N) - (p + 1.0) * static_cast<double>(N - 2) / 2.0;
  return static_cast<double>(N - 2) *
         std::exp((p - 1.0) / (p + 1.0) * std::log(sphere_area(N)) - 2.0 / (p + 1.0) * log_gamma(beta1) -
                  4.0 / (p + 1.0));
}

}  // namespace shellbreak
