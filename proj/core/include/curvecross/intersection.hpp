#pragma once

// Counting solutions (phi, psi) on the torus of f(phi) = g(psi).
//
// Pipeline: dense polylines sized by each curve's Lipschitz bound, candidate
// segment pairs from a uniform grid, 2-D Newton refinement from every
// candidate, deduplication on the torus, and a degeneracy flag for pairs that
// are not safely transversal.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "curvecross/curve.hpp"

namespace curvecross {

struct CountingConfig {
  /// Target chord length of the polylines. 0 selects
  /// 0.02 * point_radius_bound(N, metric).
  double seg_target = 0.0;
  /// Step-size tolerance of Newton, in parameter space.
  double newton_tol = 1e-12;
  /// Roots closer than this on the torus are merged.
  double dedupe_radius = 1e-6;
  int max_newton_iters = 50;
  /// Minimum |det J| accepted at a root.
  double degeneracy_threshold = 1e-8;
  /// Metric the curves were drawn in; only used to scale the defaults.
  SobolevOrder metric{};

  /// Throws PreconditionError when a field is non-positive.
  void validate() const;
  double resolved_seg_target(std::size_t degree) const;
};

struct IntersectionResult {
  std::size_t count = 0;
  std::vector<std::pair<double, double>> solutions;
  /// Smallest |det(f'(phi), g'(psi))| over the reported solutions
  /// (+inf when there are none).
  double min_abs_det = 0.0;
  bool degenerate = false;
  /// Filled in by callers that also ran brute_force_count.
  std::optional<bool> oracle_stable;
};

/// Throws PreconditionError on degree mismatch.
IntersectionResult count_intersections(const TrigCurve& f, const TrigCurve& g,
                                       const CountingConfig& cfg = {});

struct BruteForceCount {
  std::size_t count = 0;
  bool stable = false;
};

/// Counts properly crossing segment pairs of uniform M-, 2M- and 4M-vertex
/// polylines by checking every pair. `stable` is true when all three agree.
/// Requires M >= 256.
BruteForceCount brute_force_count(const TrigCurve& f, const TrigCurve& g, std::size_t vertices);

/// True iff the open segments p1p2 and q1q2 cross transversally. Touching
/// endpoints and collinear overlap are not crossings. Throws
/// PreconditionError for a zero-length segment.
bool segment_proper_cross(PlanePoint p1, PlanePoint p2, PlanePoint q1, PlanePoint q2);

enum class NewtonStatus { converged, singular, max_iterations };

struct NewtonOutcome {
  NewtonStatus status = NewtonStatus::max_iterations;
  double phi = 0.0;
  double psi = 0.0;
  /// det(f'(phi), -g'(psi)) at the returned point.
  double det = 0.0;
  double residual = 0.0;
  /// Smallest residual |f - g| seen during the iteration.
  double best_residual = 0.0;
  int iterations = 0;

  bool converged() const { return status == NewtonStatus::converged; }
};

/// Newton's method for F(phi, psi) = f(phi) - g(psi) with Jacobian columns
/// f'(phi) and -g'(psi). Angles of a converged root are wrapped to [0, 2pi).
NewtonOutcome newton_refine(const TrigCurve& f, const TrigCurve& g, double phi0, double psi0,
                            const CountingConfig& cfg = {});

/// Distance between parameter pairs on the flat torus.
double torus_distance(std::pair<double, double> a, std::pair<double, double> b);

}  // namespace curvecross
