#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include <shellbreak/errors.hpp>
#include <shellbreak/special.hpp>

using namespace shellbreak;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(LogGamma, KnownValues) {
  EXPECT_NEAR(log_gamma(1.0), 0.0, 1e-15);
  EXPECT_NEAR(log_gamma(2.0), 0.0, 1e-15);
  EXPECT_LT(rel(log_gamma(0.5), std::log(std::sqrt(std::numbers::pi))), 1e-14);
  EXPECT_LT(rel(log_gamma(11.0), std::log(3628800.0)), 1e-14);
}

TEST(LogGamma, AgreesWithStdLgamma) {
  double worst = 0.0;
  for (double x = 1e-3; x < 1e6; x *= 1.07) {
    const double ref = std::lgamma(x);
    if (std::abs(ref) < 0.5) continue;  // relative error is meaningless near the zeros at 1 and 2
    worst = std::max(worst, rel(log_gamma(x), ref));
  }
  EXPECT_LT(worst, 1e-13);
}

TEST(LogGamma, NearZerosAbsolute) {
  for (double x = 0.9; x < 2.2; x += 0.01) EXPECT_NEAR(log_gamma(x), std::lgamma(x), 5e-15) << x;
}

TEST(LogGamma, RejectsNonPositive) {
  EXPECT_THROW(log_gamma(0.0), DomainError);
  EXPECT_THROW(log_gamma(-1.5), DomainError);
}

TEST(LogGamma, Recurrence) {
  double worst = 0.0;
  for (double x = 0.1; x < 50.0; x += 0.37) {
    worst = std::max(worst, rel(std::exp(log_gamma(x + 1.0)), x * std::exp(log_gamma(x))));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(BetaFn, Examples) {
  EXPECT_LT(rel(beta_fn(1.0, 3.7), 1.0 / 3.7), 1e-14);
  EXPECT_LT(rel(beta_fn(0.5, 0.5), std::numbers::pi), 1e-14);
  EXPECT_LT(rel(beta_fn(2.0, 3.0), 1.0 / 12.0), 1e-14);
  EXPECT_THROW(beta_fn(0.0, 1.0), DomainError);
  EXPECT_THROW(beta_fn(1.0, -2.0), DomainError);
}

TEST(BetaFn, SymmetryOnRandomArguments) {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(0.1, 50.0);
  for (int k = 0; k < 100; ++k) {
    const double a = u(rng);
    const double b = u(rng);
    EXPECT_LT(rel(beta_fn(a, b), beta_fn(b, a)), 1e-13) << a << " " << b;
  }
}

TEST(BetaFn, RecurrenceInFirstArgument) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.1, 50.0);
  for (int k = 0; k < 100; ++k) {
    const double a = u(rng);
    const double b = u(rng);
    EXPECT_LT(rel(beta_fn(a + 1.0, b), beta_fn(a, b) * a / (a + b)), 1e-13);
  }
}

TEST(BetaFn, IntegerArgumentMatchesExtendedProduct) {
  for (double a : {0.3, 4.5, 151.0, 2000.25}) {
    for (int m = 1; m <= 6; ++m) {
      long double ref = 1.0L / a;
      for (int j = 1; j < m; ++j) ref *= j / (static_cast<long double>(a) + j);
      EXPECT_LT(rel(beta_fn(a, m), static_cast<double>(ref)), 1e-14);
    }
  }
}

TEST(BetaFn, MatchesExtendedPrecisionLgamma) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.05, 300.0);
  for (int k = 0; k < 200; ++k) {
    const double a = u(rng);
    const double b = u(rng);
    const long double la = a, lb = b;
    const double ref = static_cast<double>(std::exp(std::lgamma(la) + std::lgamma(lb) - std::lgamma(la + lb)));
    EXPECT_LT(rel(beta_fn(a, b), ref), 1e-13) << a << " " << b;
  }
}

TEST(GammaRatio, Examples) {
  const GammaRatio g = gamma_ratio(10.0, 1.0);
  EXPECT_LT(rel(g.exact, 1.0 / 110.0), 1e-13);
  EXPECT_LT(rel(g.asymptotic, 0.01), 1e-15);
  const GammaRatio h = gamma_ratio(7.25, 0.0);
  EXPECT_LT(rel(h.exact, 1.0 / 7.25), 1e-13);
  EXPECT_LT(rel(h.asymptotic, 1.0 / 7.25), 1e-15);
  const GammaRatio big = gamma_ratio(1000.0, 0.5);
  EXPECT_GE(big.ratio(), 0.999);
  EXPECT_LE(big.ratio(), 1.001);
  EXPECT_THROW(gamma_ratio(0.0, 1.0), DomainError);
  EXPECT_THROW(gamma_ratio(1.0, -2.5), DomainError);
}

TEST(GammaRatio, LargeAlphaEnvelope) {
  for (double a : {100.0, 250.0, 1000.0, 5000.0}) {
    for (double b = -0.9; b <= 3.0; b += 0.3) {
      const double r = gamma_ratio(a, b).ratio();
      const double w = 2.0 * (std::abs(b) + 1.0) * (std::abs(b) + 1.0) / a;
      EXPECT_GE(r, 1.0 - w);
      EXPECT_LE(r, 1.0 + w);
    }
  }
}

TEST(GammaRatio, FiniteWhereGammaOverflows) {
  const GammaRatio g = gamma_ratio(500.0, 2.0);
  EXPECT_TRUE(std::isfinite(g.exact));
  EXPECT_GT(g.exact, 0.0);
}

TEST(CEpsilon, ClosedForm) {
  EXPECT_LT(rel(c_epsilon(0.5), std::exp(-0.5)), 1e-15);
  EXPECT_LT(c_epsilon(1e8), 1e-4);
  EXPECT_THROW(c_epsilon(0.0), DomainError);
  EXPECT_THROW(c_epsilon(-1.0), DomainError);
}

// Brute-force maximization of r^ε |ln r|^{1/2} over 10^6 points, refined once around the winner.
TEST(CEpsilon, MatchesGridMaximization) {
  for (double eps : {0.05, 0.1, 0.25, 0.5, 1.0}) {
    auto f = [eps](double r) { return std::pow(r, eps) * std::sqrt(std::abs(std::log(r))); };
    // Sample in t = -ln r so that the maximizer e^{-1/(2ε)} is resolved for small ε.
    const int n = 1000000;
    const double tmax = 20.0 / eps;
    double best = 0.0;
    double best_t = 0.0;
    for (int i = 1; i < n; ++i) {
      const double t = tmax * i / n;
      const double v = f(std::exp(-t));
      if (v > best) {
        best = v;
        best_t = t;
      }
    }
    EXPECT_LT(rel(best, c_epsilon(eps)), 1e-6) << eps;
    EXPECT_LT(std::abs(best_t + std::log(c_epsilon_argmax(eps))), 2.0 * tmax / n + 1e-3) << eps;
  }
}
