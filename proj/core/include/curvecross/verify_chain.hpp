#pragma once

// Step-by-step numerical reconstruction of the L2 mean through the
// integral-geometry chain: incidence fibre, disc of values, speed integral
// Xi(A), Buffon averaging and the final volume normalisation.

#include <cstdint>
#include <string>
#include <vector>

#include "curvecross/curve.hpp"
#include "curvecross/rng.hpp"

namespace curvecross {

/// Radius of the ball of curves through a point at distance A from the
/// origin: sqrt(1 - 2 A^2 / mu(N, r)). Throws PreconditionError when A lies
/// outside [0, point_radius_bound(N, r)].
double k_of_A(double a, unsigned n, SobolevOrder r);

/// Closed form of Xi(A) (L2 metric), evaluated in log space:
///   pi^(2N) 2^(4N) k^(4N+1) lambda(N) (2N)! / (4N+1)!
double xi_closed_form(double a, unsigned n);

/// Xi(A) by adaptive quadrature of the radial integral
///   int_0^k 2 pi s * lambda(N) s * V_(4N-2) (k^2 - s^2)^(2N-1) ds
/// to relative tolerance 1e-10. V_d is the volume of the unit d-ball.
double xi_quadrature(double a, unsigned n);

/// ((2N+1)/2) int_0^(pi/2) sin(g) cos(g)^(8N+3) dg, which equals 1/8.
double eight_integral(unsigned n);

/// Mean of |sin| over [0, 2pi] by quadrature; equals 2/pi.
double buffon_average();
/// Mean of |sin| over [lo, hi] by quadrature.
double buffon_average_over(double lo, double hi);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Plain Monte Carlo mean of |sin(theta)| with theta uniform on [0, 2pi].
Estimate buffon_monte_carlo(std::uint64_t samples, const SeedSpec& seed);

/// Volume scaling 1/(2N+1) of the forgetful map, computed from the norm of
/// the evaluation functional (the constraint-normal geometry).
double forgetful_factor(unsigned n);
/// Measure ratio 4/(2N+1) between the induced volume on L(0,0) and the
/// fibre-times-disc volume, computed from the normal vectors and their
/// projections.
double disc_projection_factor(unsigned n);

enum class XiMethod { quadrature, closed_form };

/// The L2 mean rebuilt from the chain: outer quadrature of 2 pi A Xi(A)^2,
/// times forgetful, Buffon and projection factors, times 4 pi^2, divided by
/// the volume of the product of unit balls. Requires 1 <= N <= 8.
double assemble_mean_from_chain(unsigned n, XiMethod method = XiMethod::quadrature);

struct FiberEstimate {
  double value = 0.0;
  double std_error = 0.0;
  double acceptance_rate = 0.0;
  std::uint64_t attempts = 0;
  std::uint64_t accepted = 0;
  /// Smallest integrand value among accepted samples.
  double min_integrand = 0.0;
};

/// Monte Carlo integral of |det(f'(0), g'(0))| / (2N+1) over the fibre L(0,0)
/// within the product of unit balls, turned into a mean intersection number
/// (times 4 pi^2, divided by the total volume). The fibre volume is
/// estimated from the rejection rate. Requires 1 <= N <= 3; throws
/// ConvergenceError when fewer than 1e-4 of the attempts are accepted.
FiberEstimate fiber_mc_check(unsigned n, std::uint64_t attempts, const SeedSpec& seed, unsigned workers = 1);

struct ChainStep {
  std::string name;
  double closed_form = 0.0;
  double numeric = 0.0;
  double relative_error = 0.0;
  /// Allowed deviation. For "sigma" steps this is the number of standard
  /// errors, otherwise a relative (or, for zero targets, absolute) bound.
  double tolerance = 0.0;
  std::string criterion;  // "relative", "absolute" or "sigma"
  double std_error = 0.0;
  bool skipped = false;
  bool passed = false;
};

struct ChainReport {
  std::vector<ChainStep> steps;

  bool all_passed() const;
};

struct ChainOptions {
  /// Rejection attempts for the fibre check; 0 records the step as skipped.
  std::uint64_t fiber_attempts = 100000;
  SeedSpec seed{};
  unsigned workers = 1;
};

/// Runs every chain step for each degree (1..8).
ChainReport run_chain(const std::vector<unsigned>& degrees, const ChainOptions& options = {});

}  // namespace curvecross
