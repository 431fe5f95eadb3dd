#include "curvecross/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curvecross/error.hpp"

namespace curvecross {

namespace {

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Largest singular value of [[p, q], [u, v]], inflated by a few ulps so that it
// stays an upper bound after rounding.
double spectral_norm(double p, double q, double u, double v) {
  const double s = p * p + q * q + u * u + v * v;
  const double d = p * v - q * u;
  const double disc = std::max(0.0, s * s - 4.0 * d * d);
  return std::sqrt(0.5 * (s + std::sqrt(disc))) * (1.0 + 1e-12);
}

void require_same_degree(const TrigCurve& c1, const TrigCurve& c2) {
  if (c1.degree() != c2.degree()) {
    throw PreconditionError("curves have different degrees");
  }
}

}  // namespace

double norm(Vec2 v) { return std::hypot(v.x, v.y); }
double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

TrigCurve::TrigCurve(std::size_t degree)
    : degree_(degree),
      xa_(degree + 1, 0.0),
      xb_(degree, 0.0),
      ya_(degree + 1, 0.0),
      yb_(degree, 0.0) {}

TrigCurve::TrigCurve(std::vector<double> xa, std::vector<double> xb,
                     std::vector<double> ya, std::vector<double> yb)
    : degree_(xb.size()),
      xa_(std::move(xa)),
      xb_(std::move(xb)),
      ya_(std::move(ya)),
      yb_(std::move(yb)) {
  if (xa_.size() != degree_ + 1 || ya_.size() != degree_ + 1 || yb_.size() != degree_) {
    throw PreconditionError("coefficient array lengths do not match the degree");
  }
  if (!all_finite(xa_) || !all_finite(xb_) || !all_finite(ya_) || !all_finite(yb_)) {
    throw PreconditionError("curve coefficients must be finite");
  }
}

bool TrigCurve::is_constant() const {
  auto zero = [](double x) { return x == 0.0; };
  return std::all_of(xa_.begin() + 1, xa_.end(), zero) && std::all_of(xb_.begin(), xb_.end(), zero) &&
         std::all_of(ya_.begin() + 1, ya_.end(), zero) && std::all_of(yb_.begin(), yb_.end(), zero);
}

double wrap_angle(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(phi, two_pi);
  if (w < 0.0) w += two_pi;
  return w >= two_pi ? 0.0 : w;
}

CurveJet evaluate_jet(const TrigCurve& c, double phi) {
  phi = wrap_angle(phi);
  const auto xa = c.xa(), xb = c.xb(), ya = c.ya(), yb = c.yb();
  const double c1 = std::cos(phi), s1 = std::sin(phi);

  CurveJet jet{{xa[0], ya[0]}, {0.0, 0.0}};
  double cj = 1.0, sj = 0.0;
  for (std::size_t j = 1; j <= c.degree(); ++j) {
    // (cos jphi, sin jphi) by rotation of the previous harmonic.
    const double cn = cj * c1 - sj * s1;
    sj = sj * c1 + cj * s1;
    cj = cn;
    const double jd = static_cast<double>(j);
    jet.point.x += xa[j] * cj + xb[j - 1] * sj;
    jet.point.y += ya[j] * cj + yb[j - 1] * sj;
    jet.velocity.x += jd * (-xa[j] * sj + xb[j - 1] * cj);
    jet.velocity.y += jd * (-ya[j] * sj + yb[j - 1] * cj);
  }
  return jet;
}

PlanePoint evaluate(const TrigCurve& c, double phi) { return evaluate_jet(c, phi).point; }

Vec2 derivative(const TrigCurve& c, double phi) { return evaluate_jet(c, phi).velocity; }

double tau_weight(std::size_t j, SobolevOrder r) {
  const double j2 = static_cast<double>(j) * static_cast<double>(j);
  double term = 1.0, sum = 1.0;
  for (unsigned q = 1; q <= r.r; ++q) {
    term *= j2;
    sum += term;
  }
  return sum;
}

double inner_product(const TrigCurve& c1, const TrigCurve& c2, SobolevOrder r) {
  require_same_degree(c1, c2);
  double sum = 2.0 * (c1.xa()[0] * c2.xa()[0] + c1.ya()[0] * c2.ya()[0]);
  for (std::size_t j = 1; j <= c1.degree(); ++j) {
    const double block = c1.xa()[j] * c2.xa()[j] + c1.xb()[j - 1] * c2.xb()[j - 1] +
                         c1.ya()[j] * c2.ya()[j] + c1.yb()[j - 1] * c2.yb()[j - 1];
    sum += tau_weight(j, r) * block;
  }
  return sum;
}

double norm(const TrigCurve& c, SobolevOrder r) {
  return std::sqrt(std::max(0.0, inner_product(c, c, r)));
}

double lipschitz_bound(const TrigCurve& c) {
  double bound = 0.0;
  for (std::size_t j = 1; j <= c.degree(); ++j) {
    bound += static_cast<double>(j) *
             spectral_norm(c.xa()[j], c.xb()[j - 1], c.ya()[j], c.yb()[j - 1]);
  }
  return bound;
}

double curvature_speed_bound(const TrigCurve& c) {
  double bound = 0.0;
  for (std::size_t j = 1; j <= c.degree(); ++j) {
    const double jd = static_cast<double>(j);
    bound += jd * jd * spectral_norm(c.xa()[j], c.xb()[j - 1], c.ya()[j], c.yb()[j - 1]);
  }
  return bound;
}

double mu_value(std::size_t degree, SobolevOrder r) {
  double mu = 1.0;
  for (std::size_t j = 1; j <= degree; ++j) mu += 2.0 / tau_weight(j, r);
  return mu;
}

double point_radius_bound(std::size_t degree, SobolevOrder r) {
  return std::sqrt(mu_value(degree, r) / 2.0);
}

}  // namespace curvecross
