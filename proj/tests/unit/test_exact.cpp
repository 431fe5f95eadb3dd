#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "curvecross/error.hpp"
#include "curvecross/exact.hpp"

using namespace curvecross;

namespace {

constexpr double kPi = std::numbers::pi;

ExactRational frac(long long p, long long q) { return ExactRational(BigInt(p), BigInt(q)); }

// Independent floating-point route to the L2 mean for moderate N via lgamma.
double l2_mean_by_lgamma(unsigned n) {
  const long double nd = n;
  const long double log_v = (8 * nd + 3) * std::log(2.0L) + 4 * std::lgamma(2 * nd + 1) - 2 * std::lgamma(4 * nd + 2) +
                            std::log(nd * (nd + 1) * (2 * nd + 1) / 6);
  return static_cast<double>(std::exp(log_v));
}

}  // namespace

TEST(ExactRational, StaysInLowestTerms) {
  const ExactRational v = frac(6, -4);
  EXPECT_EQ(v.numerator(), BigInt(-3));
  EXPECT_EQ(v.denominator(), BigInt(2));
  const ExactRational w = frac(1, 6) + frac(1, 3);
  EXPECT_EQ(w, frac(1, 2));
  EXPECT_EQ(w.to_string(), "1/2");
  EXPECT_THROW(frac(1, 0), PreconditionError);
  EXPECT_THROW(frac(1, 2) / ExactRational(0), PreconditionError);
}

TEST(ExactRational, ToDoubleWithinOneUlp) {
  std::mt19937_64 gen(1);
  for (int i = 0; i < 2000; ++i) {
    const long long p = static_cast<long long>(gen() >> 12) - (1ll << 51);
    const long long q = static_cast<long long>(gen() >> 12) + 1;
    const double got = frac(p, q).to_double();
    const long double ref = static_cast<long double>(p) / static_cast<long double>(q);
    const double ulp = std::nextafter(std::abs(got), INFINITY) - std::abs(got);
    EXPECT_LE(std::abs(static_cast<long double>(got) - ref), ulp) << p << "/" << q;
  }
}

TEST(ExactRational, ToDoubleHandlesHugeOperands) {
  // (4001)!/(4000)! = 4001 exactly; both factorials overflow any double.
  const ExactRational v(factorial(4001), factorial(4000));
  EXPECT_EQ(v.to_double(), 4001.0);
  const ExactRational tiny(factorial(300), factorial(301));
  EXPECT_DOUBLE_EQ(tiny.to_double(), 1.0 / 301.0);
  EXPECT_DOUBLE_EQ(frac(512, 225).to_double(), 512.0 / 225.0);
}

TEST(Tau, Examples) {
  EXPECT_EQ(tau(2, SobolevOrder{1}), BigInt(5));
  for (unsigned j : {1u, 7u, 100u}) EXPECT_EQ(tau(j, SobolevOrder{0}), BigInt(1));
  EXPECT_EQ(tau(3, SobolevOrder{2}), BigInt(91));
  EXPECT_THROW(tau(0, SobolevOrder{1}), PreconditionError);
}

TEST(Mu, Examples) {
  EXPECT_EQ(mu(3, SobolevOrder{0}), ExactRational(7));
  for (unsigned r : {0u, 1u, 5u}) EXPECT_EQ(mu(0, SobolevOrder{r}), ExactRational(1));
  EXPECT_EQ(mu(1, SobolevOrder{1}), ExactRational(2));
}

TEST(LambdaSq, Examples) {
  EXPECT_EQ(lambda_sq(3, SobolevOrder{0}), ExactRational(14));
  EXPECT_EQ(lambda_sq(0, SobolevOrder{2}), ExactRational(0));
  EXPECT_EQ(lambda_sq(2, SobolevOrder{1}), frac(13, 10));
}

TEST(MuLambda, L2ClosedFormsUpTo100) {
  for (unsigned n = 0; n <= 100; ++n) {
    EXPECT_EQ(mu(n, SobolevOrder{0}), ExactRational(2 * n + 1));
    EXPECT_EQ(lambda_sq(n, SobolevOrder{0}), ExactRational(static_cast<long long>(n) * (n + 1) * (2 * n + 1) / 6));
  }
}

TEST(BallVolumeEven, Examples) {
  const PiMultiple disc = ball_volume_even(1);
  EXPECT_EQ(disc.coefficient, ExactRational(1));
  EXPECT_EQ(disc.pi_power, 1u);
  EXPECT_DOUBLE_EQ(disc.approx(), kPi);
  const PiMultiple six = ball_volume_even(3);
  EXPECT_EQ(six.coefficient, frac(1, 6));
  EXPECT_EQ(six.pi_power, 3u);
  EXPECT_NEAR(six.approx(), std::pow(kPi, 3) / 6, 1e-14);
  EXPECT_THROW(ball_volume_even(0), PreconditionError);
}

TEST(BallVolumeEven, SquareIsProductBallVolume) {
  for (unsigned n = 1; n <= 6; ++n) {
    const PiMultiple v = ball_volume_even(2 * n + 1);
    const ExactRational sq = v.coefficient * v.coefficient;
    const BigInt f = factorial(2 * n + 1);
    EXPECT_EQ(sq, ExactRational(BigInt(1), f * f));
    EXPECT_EQ(2 * v.pi_power, 2 * (2 * n + 1));
  }
}

TEST(MeanIntersectionsExact, Examples) {
  for (unsigned r : {0u, 1u, 3u}) {
    const MeanValue zero = mean_intersections_exact(0, SobolevOrder{r});
    EXPECT_TRUE(zero.exact.is_zero());
    EXPECT_EQ(zero.approx, 0.0);
  }
  EXPECT_EQ(mean_intersections_exact(1, SobolevOrder{0}).exact, frac(512, 225));
  EXPECT_NEAR(mean_intersections_exact(1, SobolevOrder{0}).approx, 2.275556, 1e-6);
  EXPECT_NEAR(mean_intersections_exact(2, SobolevOrder{0}).approx, 6.6048, 1e-4);
  EXPECT_EQ(mean_intersections_exact(1, SobolevOrder{1}).exact, frac(128, 75));
  EXPECT_NEAR(mean_intersections_exact(1, SobolevOrder{1}).approx, 1.706667, 1e-6);
}

TEST(MeanIntersectionsExact, FrozenBignumValues) {
  // Computed independently with Python's fractions module.
  EXPECT_EQ(mean_intersections_exact(2, SobolevOrder{0}).exact, frac(131072, 19845));
  EXPECT_EQ(mean_intersections_exact(3, SobolevOrder{0}).exact, frac(16777216, 1288287));
  EXPECT_EQ(mean_intersections_exact(2, SobolevOrder{1}).exact, frac(212992, 59535));
  EXPECT_EQ(mean_intersections_exact(3, SobolevOrder{1}).exact, frac(8388608, 1522521));
}

TEST(MeanIntersectionsExact, GeneralFormulaReducesToL2FormulaUpTo50) {
  for (unsigned n = 0; n <= 50; ++n) {
    const MeanValue general = mean_intersections_exact(n, SobolevOrder{0});
    const MeanValue l2 = mean_intersections_l2(n);
    EXPECT_EQ(general.exact, l2.exact) << "N=" << n;
    EXPECT_EQ(general.approx, l2.approx);
  }
}

TEST(MeanIntersectionsExact, PositiveAndMatchesIndependentLogGammaRoute) {
  for (unsigned n = 1; n <= 60; ++n) {
    const MeanValue v = mean_intersections_exact(n, SobolevOrder{0});
    EXPECT_EQ(v.exact.sign(), 1);
    EXPECT_NEAR(v.approx, l2_mean_by_lgamma(n), 1e-12 * v.approx) << "N=" << n;
  }
}

TEST(MeanIntersectionsExact, ApproxIsRoundedExact) {
  for (unsigned n : {1u, 7u, 40u, 120u}) {
    const MeanValue v = mean_intersections_exact(n, SobolevOrder{2});
    EXPECT_EQ(v.approx, v.exact.to_double());
    const BigInt g = boost::multiprecision::gcd(v.exact.numerator(), v.exact.denominator());
    EXPECT_EQ(g, BigInt(1));
  }
}

TEST(AsymptoteRatio, Examples) {
  // (512/225) / (pi/3); evaluated independently in double precision.
  EXPECT_NEAR(asymptote_ratio(1), 2.1729954896813446, 1e-12);
  EXPECT_THROW(asymptote_ratio(0), PreconditionError);
}

TEST(AsymptoteRatio, TendsToOne) {
  const double r20 = asymptote_ratio(20), r200 = asymptote_ratio(200);
  EXPECT_LT(std::abs(r200 - 1.0), 0.1);
  EXPECT_LT(std::abs(r200 - 1.0), std::abs(r20 - 1.0));
}

TEST(SobolevLimitReport, RejectsL2AndBadLists) {
  EXPECT_THROW(sobolev_limit_report(SobolevOrder{0}, {1, 2}), PreconditionError);
  EXPECT_THROW(sobolev_limit_report(SobolevOrder{2}, {}), PreconditionError);
  EXPECT_THROW(sobolev_limit_report(SobolevOrder{2}, {5, 5}), PreconditionError);
}

TEST(SobolevLimitReport, SecondOrderSequenceConverges) {
  const SobolevLimitReport rep = sobolev_limit_report(SobolevOrder{2}, {5, 10, 20});
  ASSERT_EQ(rep.rows.size(), 3u);
  const double d1 = std::abs(rep.rows[1].mean.approx - rep.rows[0].mean.approx);
  const double d2 = std::abs(rep.rows[2].mean.approx - rep.rows[1].mean.approx);
  EXPECT_LT(d2, d1);
  ASSERT_TRUE(rep.limit.has_value());
  EXPECT_TRUE(rep.ratio_to_2pi_over_r_sq.has_value());
  EXPECT_TRUE(rep.ratio_to_2pi_over_r_plus_1.has_value());
  EXPECT_LT(*rep.limit_relative_error, 1e-12);
  // Monotone increase towards the limit.
  EXPECT_LT(rep.rows[2].mean.approx, *rep.limit);
}

TEST(SobolevLimitReport, FirstOrderGrowsLinearly) {
  const SobolevLimitReport rep = sobolev_limit_report(SobolevOrder{1}, {10, 20, 40});
  EXPECT_FALSE(rep.limit.has_value());
  const double a = rep.rows[0].mean.approx / 10, b = rep.rows[1].mean.approx / 20, c = rep.rows[2].mean.approx / 40;
  EXPECT_LT(std::abs(c - b), std::abs(b - a));
}

TEST(SobolevSeriesLimits, MatchesBruteForcePartialSums) {
  // For r = 6 the tail after 2e5 terms is far below double precision.
  const SobolevOrder r{6};
  long double lam = 0, inv = 0;
  for (unsigned j = 200000; j >= 1; --j) {
    long double t = 0, p = 1;
    for (unsigned q = 0; q <= r.r; ++q) {
      t += p;
      p *= static_cast<long double>(j) * j;
    }
    lam += static_cast<long double>(j) * j / t;
    inv += 1 / t;
  }
  const SeriesLimits s = sobolev_series_limits(r);
  EXPECT_NEAR(s.lambda_sq, static_cast<double>(lam), 1e-13);
  EXPECT_NEAR(s.mu, static_cast<double>(1 + 2 * inv), 1e-13);
}

TEST(SobolevSeriesLimits, SlowCaseStillMeetsTolerance) {
  // r = 2: terms decay like j^-2, so the bracketed tail is what makes this
  // feasible. Compare with a long-double sum up to 2e6 plus the j^-1 tail.
  const SeriesLimits s = sobolev_series_limits(SobolevOrder{2});
  EXPECT_LT(s.relative_error, 1e-12);
  long double lam = 0;
  const unsigned terms = 2000000;
  for (unsigned j = terms; j >= 1; --j) {
    const long double jj = static_cast<long double>(j) * j;
    lam += jj / (1 + jj + jj * jj);
  }
  lam += 1.0L / terms;  // tail ~ sum_{j>J} j^-2
  EXPECT_NEAR(s.lambda_sq, static_cast<double>(lam), 1e-11);
  EXPECT_THROW(sobolev_series_limits(SobolevOrder{1}), PreconditionError);
}
