#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "curvecross/error.hpp"
#include "curvecross/intersection.hpp"
#include "curvecross/sampling.hpp"
#include "test_support.hpp"

using namespace curvecross;
using curvecross::testing::circle;
using curvecross::testing::rotate_image;

namespace {

constexpr double kPi = std::numbers::pi;

const TrigCurve kUnit = circle(0.0, 0.0, 1.0);
const TrigCurve kShifted = circle(1.5, 0.0, 1.0);

}  // namespace

TEST(SegmentProperCross, Examples) {
  EXPECT_TRUE(segment_proper_cross({0, -1}, {0, 1}, {-1, 0}, {1, 0}));
  EXPECT_FALSE(segment_proper_cross({0, 0}, {1, 0}, {0, 1}, {1, 1}));
  EXPECT_FALSE(segment_proper_cross({0, 0}, {1, 0}, {1, 0}, {2, 0}));
}

TEST(SegmentProperCross, TouchingAndCollinearAreNotCrossings) {
  EXPECT_FALSE(segment_proper_cross({0, 0}, {2, 0}, {1, 0}, {1, 1}));   // T-junction
  EXPECT_FALSE(segment_proper_cross({0, 0}, {2, 0}, {1, 0}, {3, 0}));   // overlap
  EXPECT_TRUE(segment_proper_cross({0, 0}, {1, 1}, {0, 1}, {1, 0}));
  EXPECT_THROW(segment_proper_cross({0, 0}, {0, 0}, {0, 1}, {1, 0}), PreconditionError);
  EXPECT_THROW(segment_proper_cross({0, 0}, {1, 0}, {2, 2}, {2, 2}), PreconditionError);
}

TEST(CountIntersections, Examples) {
  const IntersectionResult two = count_intersections(kUnit, kShifted);
  EXPECT_EQ(two.count, 2u);
  EXPECT_FALSE(two.degenerate);
  EXPECT_EQ(two.solutions.size(), two.count);

  const IntersectionResult none = count_intersections(kUnit, circle(3.0, 0.0, 0.2));
  EXPECT_EQ(none.count, 0u);
  EXPECT_FALSE(none.degenerate);
  EXPECT_TRUE(std::isinf(none.min_abs_det));

  EXPECT_TRUE(count_intersections(kUnit, kUnit).degenerate);
}

TEST(CountIntersections, TwoCircleSolutionsAreAnalytic) {
  const IntersectionResult res = count_intersections(kUnit, kShifted);
  ASSERT_EQ(res.count, 2u);
  const double phi = std::atan2(std::sqrt(1 - 0.75 * 0.75), 0.75);
  for (const auto& [p, q] : res.solutions) {
    const PlanePoint x = evaluate(kUnit, p);
    EXPECT_NEAR(x.x, 0.75, 1e-12);
    EXPECT_NEAR(std::abs(x.y), std::sqrt(1 - 0.5625), 1e-12);
    const double expect_p = x.y > 0 ? phi : 2 * kPi - phi;
    EXPECT_NEAR(p, expect_p, 1e-12);
    EXPECT_NEAR(q, x.y > 0 ? kPi - phi : kPi + phi, 1e-12);
  }
}

TEST(CountIntersections, ConstantCurves) {
  const TrigCurve a({0.1}, {}, {0.2}, {}), b({0.3}, {}, {0.2}, {});
  EXPECT_EQ(count_intersections(a, b).count, 0u);
  EXPECT_FALSE(count_intersections(a, b).degenerate);
  EXPECT_TRUE(count_intersections(a, a).degenerate);
}

TEST(CountIntersections, DegreeMismatchIsAnError) {
  EXPECT_THROW(count_intersections(kUnit, TrigCurve(2)), PreconditionError);
}

TEST(CountIntersections, ConfigValidation) {
  CountingConfig cfg;
  cfg.newton_tol = 0.0;
  EXPECT_THROW(count_intersections(kUnit, kShifted, cfg), PreconditionError);
  cfg = {};
  cfg.dedupe_radius = -1.0;
  EXPECT_THROW(count_intersections(kUnit, kShifted, cfg), PreconditionError);
}

TEST(NewtonRefine, ConvergesNearCrossing) {
  const double phi = std::atan2(std::sqrt(1 - 0.5625), 0.75);
  const NewtonOutcome out = newton_refine(kUnit, kShifted, phi + 0.05, kPi - phi - 0.04);
  ASSERT_TRUE(out.converged());
  EXPECT_LT(out.residual, 1e-10);
  EXPECT_NEAR(evaluate(kUnit, out.phi).x, 0.75, 1e-12);
  EXPECT_GT(std::abs(out.det), 1e-8);
}

TEST(NewtonRefine, ExactSeedNeedsNoIterations) {
  // Unit circle and its reflection through x = 1/2 cross at (1/2, +-sqrt(3)/2),
  // phi = pi/3 on f and psi = 2pi/3 on g, both exact in the trig sense.
  const TrigCurve g = circle(1.0, 0.0, 1.0);
  const double phi = kPi / 3, psi = 2 * kPi / 3;
  const NewtonOutcome out = newton_refine(kUnit, g, phi, psi);
  ASSERT_TRUE(out.converged());
  EXPECT_EQ(out.iterations, 0);
  EXPECT_NEAR(out.phi, phi, 1e-13);
  EXPECT_NEAR(out.psi, psi, 1e-13);
}

TEST(NewtonRefine, CoincidentCurvesFail) {
  for (double seed : {0.0, 1.0, 4.0}) {
    EXPECT_FALSE(newton_refine(kUnit, kUnit, seed, seed + 0.01).converged());
  }
}

TEST(BruteForce, Examples) {
  const BruteForceCount two = brute_force_count(kUnit, kShifted, 1024);
  EXPECT_EQ(two.count, 2u);
  EXPECT_TRUE(two.stable);
  const BruteForceCount none = brute_force_count(kUnit, circle(3.0, 0.0, 0.2), 1024);
  EXPECT_EQ(none.count, 0u);
  EXPECT_TRUE(none.stable);
  EXPECT_THROW(brute_force_count(kUnit, kShifted, 255), PreconditionError);
}

TEST(TorusDistance, WrapsAround) {
  EXPECT_NEAR(torus_distance({0.01, 0.0}, {2 * kPi - 0.01, 0.0}), 0.02, 1e-12);
  EXPECT_NEAR(torus_distance({0.0, 0.0}, {0.3, 0.4}), 0.5, 1e-12);
}

TEST(CountIntersectionsProperty, ParityBezoutAndResiduals) {
  // 10^4 uniform pairs across N in {1, 2, 3}.
  std::size_t degenerate = 0, total = 0;
  for (std::size_t n : {1u, 2u, 3u}) {
    const double radius = point_radius_bound(n, SobolevOrder{0});
    const std::uint64_t pairs = n == 1 ? 4000 : 3000;
    for (std::uint64_t i = 0; i < pairs; ++i) {
      const CurvePair p = sample_pair(n, SobolevOrder{0}, SeedSpec{2024 + n, i});
      const IntersectionResult res = count_intersections(p.f, p.g);
      ++total;
      EXPECT_LE(res.count, 4 * n * n);
      if (res.degenerate) {
        ++degenerate;
        continue;
      }
      EXPECT_EQ(res.count % 2, 0u) << "N=" << n << " i=" << i;
      for (const auto& [phi, psi] : res.solutions) {
        EXPECT_LE(norm(evaluate(p.f, phi) - evaluate(p.g, psi)), 1e-9 * radius);
      }
      for (std::size_t a = 0; a < res.solutions.size(); ++a) {
        for (std::size_t b = a + 1; b < res.solutions.size(); ++b) {
          EXPECT_GT(torus_distance(res.solutions[a], res.solutions[b]), 1e-6);
        }
      }
    }
  }
  EXPECT_LE(static_cast<double>(degenerate), 1e-3 * static_cast<double>(total));
}

TEST(CountIntersectionsProperty, AgreesWithBruteForceOracle) {
  std::size_t compared = 0, agree = 0;
  for (std::uint64_t i = 0; i < 150; ++i) {
    const CurvePair p = sample_pair(2, SobolevOrder{0}, SeedSpec{555, i});
    const IntersectionResult res = count_intersections(p.f, p.g);
    const BruteForceCount bf = brute_force_count(p.f, p.g, 1024);
    if (res.degenerate || !bf.stable) continue;
    ++compared;
    agree += res.count == bf.count;
  }
  EXPECT_GT(compared, 140u);
  EXPECT_GE(static_cast<double>(agree), 0.99 * static_cast<double>(compared));
}

TEST(CountIntersectionsProperty, RotationInvariance) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const CurvePair p = sample_pair(1 + i % 3, SobolevOrder{0}, SeedSpec{808, i});
    const double a = angle(gen);
    const IntersectionResult base = count_intersections(p.f, p.g);
    const IntersectionResult rot = count_intersections(rotate_image(p.f, a), rotate_image(p.g, a));
    if (base.degenerate || rot.degenerate) continue;
    EXPECT_EQ(base.count, rot.count) << "pair " << i;
  }
}

TEST(CountIntersectionsProperty, DeterministicAndSymmetric) {
  for (std::uint64_t i = 0; i < 30; ++i) {
    const CurvePair p = sample_pair(3, SobolevOrder{1}, SeedSpec{91, i});
    CountingConfig cfg;
    cfg.metric = SobolevOrder{1};
    const IntersectionResult a = count_intersections(p.f, p.g, cfg);
    const IntersectionResult b = count_intersections(p.f, p.g, cfg);
    EXPECT_EQ(a.solutions, b.solutions);
    const IntersectionResult swapped = count_intersections(p.g, p.f, cfg);
    if (!a.degenerate && !swapped.degenerate) EXPECT_EQ(a.count, swapped.count);
  }
}
