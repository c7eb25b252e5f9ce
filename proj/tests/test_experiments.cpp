#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include <shellbreak/errors.hpp>
#include <shellbreak/experiments.hpp>

using namespace shellbreak;

namespace {

const GridSpec kSmall{64, 32, 2.0};

}  // namespace

TEST(FitExponent, RecoversExactPowerLaw) {
  const std::vector<double> a{10, 20, 40, 80, 160, 320};
  std::vector<double> y;
  for (double x : a) y.push_back(3.5 * std::pow(x, 1.667));
  const ExponentFit f = fit_exponent(a, y);
  EXPECT_NEAR(f.slope, 1.667, 1e-12);
  EXPECT_NEAR(std::exp(f.intercept), 3.5, 1e-10);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
  EXPECT_EQ(f.points, 6u);
}

TEST(FitExponent, WindowAndErrors) {
  const std::vector<double> a{10, 20, 40, 80, 160, 320};
  std::vector<double> y;
  for (double x : a) y.push_back(x < 15 ? 1.0 : x * x);
  EXPECT_NEAR(fit_exponent(a, y, {20.0, 320.0}).slope, 2.0, 1e-12);
  EXPECT_THROW(fit_exponent(a, y, {40.0, 320.0}), InsufficientDataError);
  y[3] = -1.0;
  EXPECT_THROW(fit_exponent(a, y), DomainError);
  EXPECT_THROW(fit_exponent(std::vector<double>{1, 2}, std::vector<double>{1}), ParameterError);
}

TEST(FitExponent, SkipsFailedRecords) {
  std::vector<SweepRecord> rows;
  for (double a : {10.0, 20.0, 40.0, 80.0, 160.0, 320.0}) {
    SweepRecord r;
    r.params.alpha = a;
    r.S_full = a;
    rows.push_back(r);
  }
  rows[2].status = "failed";
  rows[2].S_full = std::numeric_limits<double>::quiet_NaN();
  const ExponentFit f = fit_exponent(rows, [](const SweepRecord& r) { return r.S_full; });
  EXPECT_EQ(f.points, 5u);
  EXPECT_NEAR(f.slope, 1.0, 1e-12);
}

TEST(Sweep, IndependentOfInputOrderAndThreads) {
  const ProblemParams tpl{2, 3.0, 0.3, 0.0};
  const std::vector<double> up{10.0, 20.0, 40.0};
  const std::vector<double> down{40.0, 10.0, 20.0};
  SolveOptions three;
  three.threads = 3;
  const auto a = sweep_alpha(tpl, up, kSmall);
  const auto b = sweep_alpha(tpl, down, kSmall, three);
  ASSERT_EQ(a.size(), 3u);
  ASSERT_EQ(b.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(a[i].params.alpha, up[i]);
    EXPECT_EQ(a[i].params, b[i].params);
    EXPECT_EQ(a[i].S_full, b[i].S_full);
    EXPECT_EQ(a[i].S_rad, b[i].S_rad);
    EXPECT_TRUE(a[i].ok()) << a[i].status;
  }
}

TEST(Sweep, RecordFieldsAreConsistent) {
  const SweepRecord r = solve_record({3, 2.0, 1.0, 40.0}, kSmall);
  ASSERT_TRUE(r.ok()) << r.status;
  const double g = growth_exponent(3, 2.0);
  EXPECT_NEAR(r.scaled_S_full, r.S_full * std::pow(40.0, -g), 1e-12 * r.S_full);
  EXPECT_NEAR(r.scaled_beta, r.beta_peak / (40.0 * 40.0), 1e-12 * r.beta_peak);
  EXPECT_LE(r.S_full, r.S_rad * (1.0 + 1e-6));
  EXPECT_FALSE(r.broken);
  EXPECT_EQ(r.s_peak, 0.0);
}

TEST(Sweep, FailuresBecomeStatus) {
  const SweepRecord r = solve_record({3, 2.0, 1.0, 1e7}, GridSpec{32, 16, 0.0});
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(std::isnan(r.S_full));
}

TEST(Sobolev, AboveLowerBoundAndRefinementStable) {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const double S = sobolev_constant(3, p, 1000);
    EXPECT_GE(S, sobolev_lower_bound(3, p) * (1.0 - 1e-3)) << p;
    const double S2 = sobolev_constant(3, p, 1999);
    EXPECT_LE(S2, S * (1.0 + 1e-12));
    EXPECT_LT(std::abs(S - S2) / S2, 1e-5) << p;
  }
  EXPECT_THROW(sobolev_constant(3, 5.0), ParameterError);
}

TEST(Sobolev, NormalizedConstantDecreasesInP) {
  // Volume-normalized L^{p+1} norms increase in p (Hölder), so S(p) |B|^{2/(p+1)} decreases;
  // the extra constant factor 1/|B| does not matter.
  const double vol = 4.0 * std::acos(-1.0) / 3.0;
  double prev = std::numeric_limits<double>::infinity();
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const double normalized = sobolev_constant(3, p, 1000) * std::pow(vol, -(p - 1.0) / (p + 1.0));
    EXPECT_LT(normalized, prev) << p;
    prev = normalized;
  }
}

TEST(MovingShell, RadiusFollowsPowerLaw) {
  const std::vector<double> alphas{10.0, 40.0};
  const MovingShellResult m = moving_shell(1.0, {2, 3.0, 0.0, 0.0}, alphas, kSmall);
  ASSERT_EQ(m.records.size(), 2u);
  EXPECT_DOUBLE_EQ(m.records[0].params.R, 0.1);
  EXPECT_DOUBLE_EQ(m.records[1].params.R, 0.025);
  EXPECT_THROW(moving_shell(0.0, {2, 3.0, 0.0, 0.0}, alphas, kSmall), ParameterError);
}

TEST(MovingShell, BrokenFromStartOfTrailingRun) {
  const std::vector<double> alphas{10.0, 20.0, 40.0};
  const MovingShellResult m = moving_shell(1.0, {2, 3.0, 0.0, 0.0}, alphas, kSmall);
  ASSERT_TRUE(m.broken_from.has_value());
  for (const auto& r : m.records) {
    if (r.params.alpha >= *m.broken_from) EXPECT_TRUE(r.broken) << r.params.alpha;
  }
  ASSERT_TRUE(m.first_broken.has_value());
  EXPECT_LE(*m.first_broken, *m.broken_from);
}

TEST(Concentration, PeakStaysAtOriginWhenWeightPeaksThere) {
  const std::vector<double> alphas{10.0, 20.0, 40.0};
  const auto rows = sweep_alpha({3, 2.0, 1.0, 0.0}, alphas, kSmall);
  const ConcentrationSummary c = concentration_track(rows);
  for (double d : c.boundary_distance) EXPECT_EQ(d, 0.0);
  EXPECT_TRUE(c.distance_decreasing);
  EXPECT_TRUE(c.beta_increasing);
  EXPECT_LE(c.scaled_beta_min, c.scaled_beta_max);
}

TEST(Concentration, SyntheticSummary) {
  std::vector<SweepRecord> rows(4);
  const double s[] = {0.8, 0.9, 0.95, 0.97};
  for (int i = 0; i < 4; ++i) {
    rows[i].params = {3, 2.0, 0.2, 10.0 * (1 << i)};
    rows[i].s_peak = s[i];
    rows[i].beta_peak = 1.0 + i;
    rows[i].scaled_beta = 0.5;
  }
  ConcentrationSummary c = concentration_track(rows);
  EXPECT_TRUE(c.distance_decreasing);
  EXPECT_TRUE(c.beta_increasing);
  EXPECT_NEAR(c.tail_min_distance, 0.03, 1e-12);
  rows[3].beta_peak = rows[2].beta_peak;
  rows[1].s_peak = 0.7;
  c = concentration_track(rows);
  EXPECT_FALSE(c.beta_increasing);
  EXPECT_FALSE(c.distance_decreasing);
}

TEST(Continuity, ApproachesEndpoints) {
  const std::vector<double> near0{0.01, 0.001};
  const ContinuityTable t0 = continuity_in_R({3, 2.0, 0.0, 20.0}, near0, 0.0, kSmall);
  ASSERT_EQ(t0.rows.size(), 2u);
  EXPECT_LT(t0.rows[1].deviation, 0.01);
  EXPECT_LT(t0.rows[1].deviation, t0.rows[0].deviation);
  const std::vector<double> near1{0.999};
  const ContinuityTable t1 = continuity_in_R({3, 2.0, 0.0, 20.0}, near1, 1.0, kSmall);
  EXPECT_LT(t1.rows[0].deviation, 0.01);
  EXPECT_THROW(continuity_in_R({3, 2.0, 0.0, 20.0}, near1, 0.5, kSmall), ParameterError);
}

TEST(Henon, SymmetryBreaksAsAlphaGrows) {
  const GridSpec g{128, 64, 2.0};
  EXPECT_FALSE(solve_record({2, 3.0, 0.0, 0.5}, g).broken);
  EXPECT_TRUE(solve_record({2, 3.0, 0.0, 4.0}, g).broken);
}

TEST(Envelopes, ClosedForms) {
  EXPECT_NEAR(scaled_upper_envelope({3, 2.0, 0.0, 80.0}, 10.0, 0.2), std::exp(4.0 / 3.0) * 10.0 * 1.2, 1e-12);
  EXPECT_NEAR(scaled_lower_envelope(3, 2.0, 0.2), std::pow(0.25, -2.0 / 3.0) * 0.8, 1e-12);
}
