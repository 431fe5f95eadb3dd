#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "curvecross/curve.hpp"
#include "curvecross/rng.hpp"

namespace curvecross {

struct CurvePair {
  TrigCurve f;
  TrigCurve g;
};

/// Number of real coefficients of one degree-N curve: 2(2N+1).
std::size_t curve_dimension(std::size_t degree);

/// Coefficients from isometric coordinates of the r-metric, in the order
/// (a0, c0, a1, b1, c1, d1, a2, ...), where a0 = u0/sqrt(2) and the degree-j
/// block is divided by sqrt(tau_j).
TrigCurve curve_from_isometric(std::span<const double> u, std::size_t degree, SobolevOrder r);
/// Inverse of curve_from_isometric.
std::vector<double> isometric_coordinates(const TrigCurve& c, SobolevOrder r);

/// Uniform point of the unit ball {norm(c, r) <= 1}: a normalized Gaussian
/// direction scaled by U^(1/dim).
TrigCurve sample_unit_ball_curve(std::size_t degree, SobolevOrder r, const SeedSpec& seed);

/// Independent uniform curves f and g from derived sub-streams.
CurvePair sample_pair(std::size_t degree, SobolevOrder r, const SeedSpec& seed);

/// Pair with density proportional to max(norm f, norm g)^k on the product of
/// unit balls, by rejection from sample_pair. k == 0 returns
/// sample_pair(degree, r, seed) unchanged. Throws PreconditionError for k < 0.
CurvePair sample_max_norm_weighted_pair(std::size_t degree, SobolevOrder r, double exponent,
                                        const SeedSpec& seed);

/// Orthonormal basis of the incidence plane {(f, g) : f(0) = g(0)} inside the
/// L2 isometric coordinates of pairs (f block first, then g block).
class FiberBasis {
 public:
  /// Throws PreconditionError for degree 0.
  explicit FiberBasis(std::size_t degree);

  std::size_t degree() const { return degree_; }
  /// Dimension of the plane: 2 * curve_dimension - 2.
  std::size_t dimension() const { return rows_; }
  /// Dimension of the ambient pair space.
  std::size_t ambient_dimension() const { return cols_; }

  std::span<const double> vector(std::size_t i) const;

  /// Cached instance per degree.
  static const FiberBasis& for_degree(std::size_t degree);

 private:
  std::size_t degree_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> basis_;  // row-major rows_ x cols_
};

/// One rejection attempt on the fiber: a uniform point of the radius-sqrt(2)
/// ball inside the incidence plane through (0, 0), kept only when both
/// curves lie in their unit balls.
std::optional<CurvePair> fiber_attempt(std::size_t degree, const SeedSpec& seed);

struct FiberSample {
  CurvePair pair;
  std::uint64_t attempts = 0;
  double acceptance_rate = 0.0;
};

/// Uniform pair on L(0,0) intersected with the product of unit balls.
/// Attempt i uses derive_seed(seed, i). Throws PreconditionError for degree 0.
FiberSample sample_fiber_pair(std::size_t degree, const SeedSpec& seed);

}  // namespace curvecross
