#include "curvecross/verify_chain.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "curvecross/error.hpp"
#include "curvecross/exact.hpp"
#include "curvecross/parallel.hpp"
#include "curvecross/quadrature.hpp"
#include "curvecross/sampling.hpp"

namespace curvecross {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kXiRelTol = 1e-10;

double lambda_sq_l2(unsigned n) {
  const double nd = n;
  return nd * (nd + 1.0) * (2.0 * nd + 1.0) / 6.0;
}

// log of the volume of the radius-R ball in R^d.
double log_ball_volume(unsigned d, double radius) {
  const double half = 0.5 * d;
  return half * std::log(kPi) + d * std::log(radius) - std::lgamma(half + 1.0);
}

// log of (pi^(2N+1) / (2N+1)!)^2, the volume of the product of unit balls.
double log_total_volume(unsigned n) { return 2.0 * log_ball_volume(4 * n + 2, 1.0); }

void require_chain_degree(unsigned n, unsigned max_degree) {
  if (n < 1 || n > max_degree) {
    throw PreconditionError("degree must lie in [1, " + std::to_string(max_degree) + "]");
  }
}

// Curve 1/2 + cos(phi) + ... + cos(N phi) in the chosen coordinate.
TrigCurve dirichlet_curve(unsigned n, bool on_x) {
  std::vector<double> a(n + 1, 1.0), b(n, 0.0), z(n + 1, 0.0);
  a[0] = 0.5;
  return on_x ? TrigCurve(a, b, z, b) : TrigCurve(z, b, a, b);
}

}  // namespace

double k_of_A(double a, unsigned n, SobolevOrder r) {
  const double mu = mu_value(n, r);
  const double max_a = std::sqrt(mu / 2.0);
  if (!(a >= 0.0) || a > max_a * (1.0 + 1e-12)) {
    throw PreconditionError("A must lie in [0, point_radius_bound]");
  }
  return std::sqrt(std::max(0.0, 1.0 - 2.0 * a * a / mu));
}

double xi_closed_form(double a, unsigned n) {
  if (n < 1) throw PreconditionError("xi needs degree >= 1");
  const double k = k_of_A(a, n, SobolevOrder{0});
  if (k == 0.0) return 0.0;
  const double nd = n;
  const double log_xi = 2.0 * nd * std::log(kPi) + 4.0 * nd * std::log(2.0) + (4.0 * nd + 1.0) * std::log(k) +
                        0.5 * std::log(lambda_sq_l2(n)) + std::lgamma(2.0 * nd + 1.0) - std::lgamma(4.0 * nd + 2.0);
  return std::exp(log_xi);
}

double xi_quadrature(double a, unsigned n) {
  if (n < 1) throw PreconditionError("xi needs degree >= 1");
  const double k = k_of_A(a, n, SobolevOrder{0});
  if (k == 0.0) return 0.0;
  // 2 pi * lambda * V_(4N-2), with V_(4N-2) = pi^(2N-1) / (2N-1)!. The
  // integration variable is rescaled to t = s / k, which pulls k^(4N+1) into
  // the log-space prefactor and keeps the quadrature on [0, 1].
  const double log_prefactor = std::log(2.0 * kPi) + 0.5 * std::log(lambda_sq_l2(n)) +
                               log_ball_volume(4 * n - 2, 1.0) + (4.0 * n + 1.0) * std::log(k);
  const int power = 2 * static_cast<int>(n) - 1;
  auto integrand = [power](double t) { return t * t * std::pow(std::max(0.0, 1.0 - t * t), power); };
  const QuadratureResult q = integrate_adaptive(integrand, 0.0, 1.0, kXiRelTol);
  return std::exp(log_prefactor) * q.value;
}

double eight_integral(unsigned n) {
  const int power = 8 * static_cast<int>(n) + 3;
  auto integrand = [power](double g) { return std::sin(g) * std::pow(std::cos(g), power); };
  const QuadratureResult q = integrate_adaptive(integrand, 0.0, kPi / 2.0, 1e-14);
  return (2.0 * n + 1.0) / 2.0 * q.value;
}

double buffon_average_over(double lo, double hi) {
  if (!(hi > lo)) throw PreconditionError("empty averaging interval");
  auto integrand = [](double t) { return std::abs(std::sin(t)); };
  // Split at the kinks of |sin| so each panel is smooth.
  double total = 0.0, left = lo;
  for (double kink = (std::floor(lo / kPi) + 1.0) * kPi; kink < hi; kink += kPi) {
    total += integrate_adaptive(integrand, left, kink, 1e-15, 1e-16).value;
    left = kink;
  }
  total += integrate_adaptive(integrand, left, hi, 1e-15, 1e-16).value;
  return total / (hi - lo);
}

double buffon_average() { return buffon_average_over(0.0, 2.0 * kPi); }

Estimate buffon_monte_carlo(std::uint64_t samples, const SeedSpec& seed) {
  if (samples < 2) throw PreconditionError("need at least two samples");
  StreamRng rng(seed);
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double v = std::abs(std::sin(2.0 * kPi * rng.uniform_open()));
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

double forgetful_factor(unsigned n) {
  // Normal directions X, Y of the incidence plane: (u, -u) with u the
  // Dirichlet-kernel curve on one coordinate. Moving along X by t changes
  // f(0) - g(0) by t * (u(0) - (-u(0))).
  const TrigCurve ux = dirichlet_curve(n, true), uy = dirichlet_curve(n, false);
  const double norm_x = std::sqrt(2.0 * inner_product(ux, ux, SobolevOrder{0}));
  const double norm_y = std::sqrt(2.0 * inner_product(uy, uy, SobolevOrder{0}));
  const double shift_x = 2.0 * evaluate(ux, 0.0).x;
  const double shift_y = 2.0 * evaluate(uy, 0.0).y;
  return norm_x * norm_y / (shift_x * shift_y);
}

double disc_projection_factor(unsigned n) {
  // Directions (u, u) normal to the fibres of (f, g) -> f(0); they move the
  // image point by u(0).
  const TrigCurve ux = dirichlet_curve(n, true), uy = dirichlet_curve(n, false);
  const double sq_x = 2.0 * inner_product(ux, ux, SobolevOrder{0});
  const double sq_y = 2.0 * inner_product(uy, uy, SobolevOrder{0});
  const double px = evaluate(ux, 0.0).x, py = evaluate(uy, 0.0).y;
  return std::sqrt(sq_x * sq_y) / (px * py);
}

double assemble_mean_from_chain(unsigned n, XiMethod method) {
  require_chain_degree(n, 8);
  const double max_a = point_radius_bound(n, SobolevOrder{0});
  auto xi = [n, method](double a) {
    return method == XiMethod::quadrature ? xi_quadrature(std::min(a, std::sqrt((2.0 * n + 1.0) / 2.0)), n)
                                          : xi_closed_form(std::min(a, std::sqrt((2.0 * n + 1.0) / 2.0)), n);
  };
  auto outer = [&xi](double a) {
    const double x = xi(a);
    return 2.0 * kPi * a * x * x;
  };
  const double disc_integral = integrate_adaptive(outer, 0.0, max_a, 1e-11).value;
  const double fibre_integral =
      forgetful_factor(n) * buffon_average() * disc_projection_factor(n) * disc_integral;
  return fibre_integral * 4.0 * kPi * kPi * std::exp(-log_total_volume(n));
}

FiberEstimate fiber_mc_check(unsigned n, std::uint64_t attempts, const SeedSpec& seed, unsigned workers) {
  require_chain_degree(n, 3);
  if (attempts < 2) throw PreconditionError("need at least two attempts");

  std::vector<double> integrand(attempts, 0.0);
  std::vector<unsigned char> accepted(attempts, 0);
  const double forget = 1.0 / (2.0 * n + 1.0);
  parallel_for(attempts, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (auto pair = fiber_attempt(n, derive_seed(seed, i))) {
        accepted[i] = 1;
        integrand[i] = forget * std::abs(cross(derivative(pair->f, 0.0), derivative(pair->g, 0.0)));
      }
    }
  });

  FiberEstimate out;
  out.attempts = attempts;
  out.min_integrand = std::numeric_limits<double>::infinity();
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < attempts; ++i) {
    if (accepted[i]) {
      ++out.accepted;
      out.min_integrand = std::min(out.min_integrand, integrand[i]);
    }
    sum += integrand[i];
    sum_sq += integrand[i] * integrand[i];
  }
  const double count = static_cast<double>(attempts);
  out.acceptance_rate = static_cast<double>(out.accepted) / count;
  if (out.acceptance_rate < 1e-4) throw ConvergenceError("fibre rejection rate exceeds the sampling budget");

  // The mean over all attempts (rejected ones contribute 0) equals the
  // acceptance rate times the mean over accepted samples, so one estimator
  // carries the error of both factors.
  const double mean = sum / count;
  const double var = std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0));
  const unsigned fibre_dim = 8 * n + 2;
  const double scale = std::exp(log_ball_volume(fibre_dim, std::numbers::sqrt2) - log_total_volume(n)) * 4.0 * kPi * kPi;
  out.value = mean * scale;
  out.std_error = std::sqrt(var / count) * scale;
  return out;
}

bool ChainReport::all_passed() const {
  for (const auto& s : steps) {
    if (!s.skipped && !s.passed) return false;
  }
  return true;
}

namespace {

ChainStep compare_step(std::string name, double closed, double numeric, double tolerance, bool absolute = false) {
  ChainStep s;
  s.name = std::move(name);
  s.closed_form = closed;
  s.numeric = numeric;
  const double diff = std::abs(numeric - closed);
  s.relative_error = closed != 0.0 ? diff / std::abs(closed) : diff;
  s.tolerance = tolerance;
  s.criterion = absolute || closed == 0.0 ? "absolute" : "relative";
  s.passed = (s.criterion == "absolute" ? diff : s.relative_error) <= tolerance;
  return s;
}

std::string short_number(double v) {
  std::ostringstream ss;
  ss << std::setprecision(4) << v;
  return ss.str();
}

// lambda(N)^2 = (1/pi) int_0^(2pi) (sum_j j cos(j phi))^2 dphi by Parseval.
double lambda_sq_by_quadrature(unsigned n) {
  auto integrand = [n](double phi) {
    double s = 0.0;
    for (unsigned j = 1; j <= n; ++j) s += j * std::cos(j * phi);
    return s * s;
  };
  return integrate_adaptive(integrand, 0.0, 2.0 * kPi, 1e-14).value / kPi;
}

// Radius of the fibre ball through (A, 0): sqrt(1 - |closest point|^2).
double k_by_closest_point(double a, unsigned n) {
  std::vector<double> xa(n + 1, 2.0 * a / (2.0 * n + 1.0)), zeros_b(n, 0.0), zeros_a(n + 1, 0.0);
  xa[0] = a / (2.0 * n + 1.0);
  const TrigCurve closest(xa, zeros_b, zeros_a, zeros_b);
  return std::sqrt(1.0 - inner_product(closest, closest, SobolevOrder{0}));
}

}  // namespace

ChainReport run_chain(const std::vector<unsigned>& degrees, const ChainOptions& options) {
  for (unsigned n : degrees) require_chain_degree(n, 8);

  ChainReport report;
  report.steps.push_back(compare_step("buffon mean |sin| = 2/pi", 2.0 / kPi, buffon_average(), 1e-12, true));

  for (unsigned n : degrees) {
    const std::string tag = "N=" + std::to_string(n) + " ";
    const double max_a = point_radius_bound(n, SobolevOrder{0});
    const double exact = mean_intersections_exact(n, SobolevOrder{0}).approx;

    report.steps.push_back(compare_step(tag + "lambda(N)^2", lambda_sq_l2(n), lambda_sq_by_quadrature(n), 1e-12));
    report.steps.push_back(
        compare_step(tag + "k(A) at A=0.5*max", k_of_A(0.5 * max_a, n, SobolevOrder{0}), k_by_closest_point(0.5 * max_a, n), 1e-12));
    for (double a : {0.0, 0.3, 0.5 * max_a, 0.8 * max_a}) {
      report.steps.push_back(compare_step(tag + "Xi(A=" + short_number(a) + ")", xi_closed_form(a, n), xi_quadrature(a, n), 1e-8));
    }
    report.steps.push_back(compare_step(tag + "Xi(A=max)", 0.0, xi_quadrature(max_a, n), 1e-12, true));
    report.steps.push_back(compare_step(tag + "radial integral = 1/8", 0.125, eight_integral(n), 1e-12, true));
    report.steps.push_back(compare_step(tag + "forgetful factor 1/(2N+1)", 1.0 / (2.0 * n + 1.0), forgetful_factor(n), 1e-12));
    report.steps.push_back(
        compare_step(tag + "projection factor 4/(2N+1)", 4.0 / (2.0 * n + 1.0), disc_projection_factor(n), 1e-12));
    const double assembled = assemble_mean_from_chain(n, XiMethod::quadrature);
    report.steps.push_back(compare_step(tag + "assembled mean vs exact", exact, assembled, 1e-8));
    report.steps.push_back(compare_step(tag + "assembly closed-form Xi vs quadrature Xi",
                                        assemble_mean_from_chain(n, XiMethod::closed_form), assembled, 1e-10));

    ChainStep fibre;
    fibre.name = tag + "fibre Monte Carlo vs exact";
    fibre.closed_form = exact;
    fibre.tolerance = 3.0;
    fibre.criterion = "sigma";
    if (options.fiber_attempts == 0 || n > 3) {
      fibre.skipped = true;
    } else {
      const FiberEstimate est = fiber_mc_check(n, options.fiber_attempts, options.seed, options.workers);
      fibre.numeric = est.value;
      fibre.std_error = est.std_error;
      fibre.relative_error = std::abs(est.value - exact) / exact;
      fibre.passed = std::abs(est.value - exact) <= 3.0 * est.std_error;
    }
    report.steps.push_back(fibre);
  }
  return report;
}

}  // namespace curvecross
