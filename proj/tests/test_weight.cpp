#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include <shellbreak/errors.hpp>
#include <shellbreak/special.hpp>
#include <shellbreak/weight.hpp>

using namespace shellbreak;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Tanh-sinh over [a, b] split at the given interior points; it absorbs the algebraic endpoint
// singularities of V at the shell when alpha < 1.
template <class F>
double integrate(F&& f, std::vector<double> pts) {
  std::sort(pts.begin(), pts.end());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i + 1] <= pts[i]) continue;
    sum += boost::math::quadrature::tanh_sinh<double>().integrate(f, pts[i], pts[i + 1], 1e-14);
  }
  return sum;
}

// ∫_B V by quadrature, with breakpoints graded towards the peaks of V at 0 (R > 0), at 1 and
// on both sides of the shell.
double integral_V_quadrature(const ProblemParams& pp) {
  const int N = pp.N;
  auto f = [&](double r) { return eval_V(pp, r) * std::pow(r, N - 1); };
  std::vector<double> pts{0.0, 1.0, pp.R};
  const double a = std::max(pp.alpha, 1.0);
  for (double k : {1.0, 4.0, 16.0, 64.0}) {
    const double d = k / a;
    if (pp.R > 0.0 && d * pp.R < pp.R) pts.push_back(d * pp.R);
    if (pp.R < 1.0 && d * (1.0 - pp.R) < 1.0 - pp.R) pts.push_back(1.0 - d * (1.0 - pp.R));
  }
  return sphere_area(N) * integrate(f, pts);
}

}  // namespace

TEST(EvalV, Examples) {
  EXPECT_EQ(eval_V({3, 2.0, 0.4, 7.0}, 0.4), 0.0);
  EXPECT_EQ(eval_V({3, 2.0, 0.5, 123.0}, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(eval_V({3, 2.0, 0.0, 3.0}, 0.5), 0.125);
  EXPECT_DOUBLE_EQ(eval_V({2, 3.0, 1.0, 2.0}, 0.25), 0.5625);
}

TEST(EvalV, RangeContinuityAndZeros) {
  const double h = 2.5e-4;
  for (double R : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    for (double a : {0.0, 0.5, 1.0, 3.0, 60.0, 800.0}) {
      const ProblemParams pp{3, 2.0, R, a};
      const double lipschitz = a / ((R > 0.0 && R < 1.0) ? std::min(R, 1.0 - R) : 1.0);
      double prev = eval_V(pp, 0.0);
      for (int i = 1; i <= 4000; ++i) {
        const double v = eval_V(pp, i * h);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
        if (a >= 1.0) EXPECT_LE(std::abs(v - prev), lipschitz * h * (1.0 + 1e-12));
        prev = v;
      }
      if (R > 0.0 && R < 1.0 && a > 0.0) EXPECT_EQ(eval_V(pp, R), 0.0);
      // The weight peaks at the outer sphere unless the shell sits there.
      if (R < 1.0) EXPECT_EQ(eval_V(pp, 1.0), 1.0);
      if (R == 1.0 && a > 0.0) EXPECT_EQ(eval_V(pp, 1.0), 0.0);
    }
  }
}

TEST(EvalV, LogSpaceUnderflowIsZero) {
  const ProblemParams pp{3, 2.0, 0.0, 5000.0};
  EXPECT_EQ(eval_V(pp, 0.5), 0.0);
  EXPECT_GT(eval_V(pp, 0.9999), 0.0);
}

TEST(EvalVPrime, Examples) {
  EXPECT_DOUBLE_EQ(eval_V_prime({3, 2.0, 0.0, 2.0}, 0.5), 1.0);
  for (double r : {0.0, 0.3, 0.99}) EXPECT_DOUBLE_EQ(eval_V_prime({3, 2.0, 1.0, 1.0}, r), -1.0);
}

TEST(EvalVPrime, SignAroundShell) {
  const ProblemParams pp{3, 2.0, 0.6, 3.5};
  for (int i = 1; i < 100; ++i) {
    const double r = i / 100.0;
    if (r < 0.6) EXPECT_LT(eval_V_prime(pp, r), 0.0) << r;
    if (r > 0.6) EXPECT_GT(eval_V_prime(pp, r), 0.0) << r;
  }
}

TEST(EvalVPrime, MatchesFiniteDifferences) {
  const ProblemParams pp{3, 2.0, 0.45, 7.0};
  for (double r : {0.1, 0.3, 0.6, 0.85}) {
    const double h = 1e-6;
    const double fd = (eval_V(pp, r + h) - eval_V(pp, r - h)) / (2.0 * h);
    EXPECT_NEAR(eval_V_prime(pp, r), fd, 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST(EvalVPrime, AtTheShell) {
  EXPECT_EQ(eval_V_prime({3, 2.0, 0.5, 3.0}, 0.5), 0.0);
  EXPECT_THROW(eval_V_prime({3, 2.0, 0.5, 0.5}, 0.5), SingularPointError);
  EXPECT_THROW(eval_V_prime({3, 2.0, 0.5, 1.0}, 0.5), SingularPointError);
  const auto [left, right] = V_prime_jump({3, 2.0, 0.25, 1.0});
  EXPECT_DOUBLE_EQ(left, -4.0);
  EXPECT_DOUBLE_EQ(right, 1.0 / 0.75);
}

TEST(IntegralV, OneDimensionalExact) {
  for (double R : {0.0, 0.13, 0.5, 0.77, 1.0}) {
    for (double a : {0.0, 0.5, 3.0, 41.0, 150.0, 1000.0}) {
      EXPECT_LT(rel(integral_V({1, 3.0, R, a}), 2.0 / (a + 1.0)), 1e-14) << R << " " << a;
    }
  }
}

TEST(IntegralV, HenonBall) {
  for (double a : {0.0, 1.0, 2.5, 40.0}) {
    EXPECT_LT(rel(integral_V({3, 2.0, 0.0, a}), 4.0 * kPi / (3.0 + a)), 1e-13);
  }
}

TEST(IntegralV, MatchesAdaptiveQuadrature) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const ProblemParams pp{dim(rng), 1.5, unit(rng), 200.0 * unit(rng)};
    const double exact = integral_V(pp);
    EXPECT_LT(rel(exact, integral_V_quadrature(pp)), 1e-10) << pp.N << " " << pp.R << " " << pp.alpha;
  }
}

TEST(IntegralV, UpperBoundWithEqualityOnlyForN1) {
  for (int N = 1; N <= 5; ++N) {
    for (double R : {0.0, 0.3, 0.8, 1.0}) {
      for (double a : {0.5, 4.0, 90.0}) {
        const double v = integral_V({N, 1.5, R, a});
        const double bound = sphere_area(N) / (a + 1.0);
        if (N == 1) {
          EXPECT_LT(rel(v, bound), 1e-14);
        } else {
          EXPECT_LT(v, bound * (1.0 - 1e-12));
        }
      }
    }
  }
}

TEST(IR, Examples) {
  EXPECT_LT(rel(I_R({3, 2.0, 0.6, 1.0}, 1.5), std::pow(0.6, 2.5) / 2.5), 1e-13);
  EXPECT_EQ(I_R({3, 2.0, 0.0, 4.0}, 0.5), 0.0);
  EXPECT_LT(rel(I_R({3, 2.0, 1.0, 2.0}, 1.0), 1.0 / 6.0), 1e-13);
  EXPECT_THROW(I_R({3, 2.0, 0.5, 3.0}, -1.0), DomainError);
}

TEST(IR, MatchesQuadrature) {
  boost::math::quadrature::tanh_sinh<double> ts;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 40; ++k) {
    const double R = 0.05 + 0.95 * unit(rng);
    const double a = 0.5 + 99.5 * unit(rng);
    const double b = -0.9 + 3.9 * unit(rng);
    // Substituting r = R s moves both endpoint singularities to s = 0 and s = 1.
    auto f = [&](double s, double sc) {
      const double one_minus = sc > 0.0 ? sc : 1.0 - s;
      return std::pow(one_minus, a - 1.0) * std::pow(s, b);
    };
    double quad = 0.0;
    const double split = std::min(0.5, 10.0 / a);
    quad += ts.integrate([&](double s) { return f(s, 0.0); }, 0.0, split, 1e-14);
    quad += ts.integrate(f, split, 1.0, 1e-14);
    quad *= std::pow(R, b + 1.0);
    EXPECT_LT(rel(I_R({3, 2.0, R, a}, b), quad), 1e-9) << R << " " << a << " " << b;
  }
}

TEST(Constants, ThreeTwo) {
  const EstimateConstants c = compute_constants(3, 2.0);
  ASSERT_TRUE(c.K.has_value());
  EXPECT_LT(rel(*c.K, 0.25), 1e-14);
  EXPECT_DOUBLE_EQ(c.beta_exp, 0.5);
  EXPECT_LT(rel(c.sphere_area, 4.0 * kPi), 1e-15);
  EXPECT_FALSE(c.R0.has_value());
  EXPECT_LT(rel(sphere_area(2), 2.0 * kPi), 1e-15);
  EXPECT_EQ(sphere_area(1), 2.0);
}

TEST(Constants, KStarClosedForm) {
  for (int N : {2, 3, 4}) {
    for (double p : {1.5, 2.0}) {
      const double ref =
          std::pow(sphere_area(N), (1.0 - p) / (p + 1.0)) * std::pow(2.0 * (p + 1.0) / (p - 1.0), 2.0 * p / (p + 1.0));
      EXPECT_LT(rel(constant_K_star(N, p), ref), 1e-13);
    }
  }
}

TEST(Constants, ConsistencyIdentity) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> dim(3, 7);
  std::uniform_real_distribution<double> unit(0.01, 0.99);
  for (int k = 0; k < 50; ++k) {
    const int N = dim(rng);
    const double pc = (N + 2.0) / (N - 2.0);
    const double p = 1.0 + (pc - 1.0) * unit(rng);
    const EstimateConstants c = compute_constants(N, p);
    ASSERT_TRUE(c.K && c.K_lower);
    const double rhs = (p + 1.0) / 2.0 * std::pow((p - 1.0) / (2.0 * (p + 1.0)), (p + 1.0) / 2.0) * *c.K_lower;
    EXPECT_LE(std::abs(*c.K - rhs), 1e-12 * *c.K) << N << " " << p;
    EXPECT_GT(c.beta_exp, -1.0);
  }
}

TEST(Constants, DimensionErrors) {
  EXPECT_THROW(constant_K(2, 3.0), DimensionError);
  EXPECT_THROW(constant_K_lower(2, 3.0), DimensionError);
  EXPECT_THROW(sobolev_lower_bound(2, 3.0), DimensionError);
  const EstimateConstants c = compute_constants(2, 3.0);
  EXPECT_FALSE(c.K.has_value());
  EXPECT_FALSE(c.K_lower.has_value());
  EXPECT_TRUE(c.K_star.has_value());
}

TEST(Constants, PlanarLowerConstant) {
  const double p = 3.0;
  const double eps = 1.0 / (p + 1.0);
  const double beta = 1.0 - (p + 1.0) * eps;
  EXPECT_DOUBLE_EQ(lower_beta_exp(2, p, eps), beta);
  const double ref = 4.0 * std::pow(kPi, (1.0 - p) / 2.0) * std::pow(p + 1.0, (p - 1.0) / 2.0) *
                     std::pow(p - 1.0, -(p + 1.0) / 2.0) * std::tgamma(beta + 1.0) * std::pow(c_epsilon(eps), p + 1.0);
  EXPECT_LT(rel(constant_K_lower_planar(p, eps), ref), 1e-13);
}

TEST(R0, ThreeTwo) {
  const double S = 11.1444;
  EXPECT_LT(rel(R0(3, 2.0, S), std::exp(-8.0 / 3.0) * std::pow(4.0, 2.0 / 3.0) / S), 1e-13);
  EXPECT_GT(R0(3, 2.0, 5.0), R0(3, 2.0, 6.0));
  EXPECT_THROW(R0(3, 5.0, S), DomainError);
  const double r0 = R0(3, 2.0, S);
  EXPECT_TRUE(condition_check({3, 2.0, r0 - 1e-6, 10.0}, S));
}

TEST(ConditionCheck, Cases) {
  const double S = 11.1444;
  EXPECT_TRUE(condition_check({3, 2.0, 0.0, 10.0}, S));
  EXPECT_FALSE(condition_check({3, 2.0, 1.0 - 1e-9, 10.0}, S));
  EXPECT_DOUBLE_EQ(growth_exponent(3, 2.0), 1.0);
  // Larger S shrinks the admissible radii.
  EXPECT_TRUE(condition_check({3, 2.0, 0.01, 10.0}, S));
  EXPECT_FALSE(condition_check({3, 2.0, 0.01, 10.0}, 1e6 * S));
}

TEST(ShellFactor, BoundedByEightOver) {
  for (double p : {1.5, 2.0, 3.0}) {
    for (int i = 1; i < 1000; ++i) {
      const double R = i / 1000.0;
      const double m = std::min(std::exp(4.0 / (R * (p + 1.0))), std::exp(4.0 / ((1.0 - R) * (p + 1.0))));
      EXPECT_LT(rel(shell_exponential_factor(R, p), m), 1e-14);
      EXPECT_LE(m, std::exp(8.0 / (p + 1.0)) * (1.0 + 1e-15));
    }
  }
}

TEST(SobolevLowerBound, ThreeTwo) {
  const double ref = std::cbrt(4.0 * kPi) * std::pow(std::tgamma(1.5), -2.0 / 3.0) * std::exp(-4.0 / 3.0);
  EXPECT_LT(rel(sobolev_lower_bound(3, 2.0), ref), 1e-14);
  for (int N = 3; N <= 6; ++N) {
    for (double f : {0.1, 0.5, 0.9}) {
      const double p = 1.0 + f * ((N + 2.0) / (N - 2.0) - 1.0);
      EXPECT_GT(sobolev_lower_bound(N, p), 0.0);
    }
  }
}

TEST(Params, Validation) {
  EXPECT_NO_THROW((ProblemParams{3, 2.0, 0.5, 10.0}.validate()));
  EXPECT_THROW((ProblemParams{3, 5.0, 0.5, 10.0}.validate()), ParameterError);
  EXPECT_THROW((ProblemParams{3, 1.0, 0.5, 10.0}.validate()), ParameterError);
  EXPECT_THROW((ProblemParams{3, 2.0, 1.5, 10.0}.validate()), ParameterError);
  EXPECT_THROW((ProblemParams{3, 2.0, 0.5, -1.0}.validate()), ParameterError);
  EXPECT_THROW((ProblemParams{0, 2.0, 0.5, 1.0}.validate()), ParameterError);
  EXPECT_NO_THROW((ProblemParams{2, 9.0, 0.0, 0.0}.validate()));
}
