#pragma once

// Degree-N trigonometric plane curves
//
//   x(phi) = a0 + sum_j (a_j cos(j phi) + b_j sin(j phi))
//   y(phi) = c0 + sum_j (c_j cos(j phi) + d_j sin(j phi))
//
// and the Sobolev-weighted Euclidean structure on their coefficient space.

#include <cstddef>
#include <span>
#include <vector>

namespace curvecross {

/// Order r of the W_2^r metric. r = 0 is plain L2.
struct SobolevOrder {
  unsigned r = 0;

  friend bool operator==(SobolevOrder, SobolevOrder) = default;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
};

using PlanePoint = Vec2;

double norm(Vec2 v);
/// z-component of a x b.
double cross(Vec2 a, Vec2 b);

/// Fourier coefficients of a curve S^1 -> R^2 of degree N.
///
/// xa = (a_0..a_N), xb = (b_1..b_N), and likewise ya/yb for the y coordinate.
/// Construction validates lengths and finiteness and throws PreconditionError.
class TrigCurve {
 public:
  /// The zero curve of the given degree.
  explicit TrigCurve(std::size_t degree = 0);
  TrigCurve(std::vector<double> xa, std::vector<double> xb,
            std::vector<double> ya, std::vector<double> yb);

  std::size_t degree() const { return degree_; }

  std::span<const double> xa() const { return xa_; }
  std::span<const double> xb() const { return xb_; }
  std::span<const double> ya() const { return ya_; }
  std::span<const double> yb() const { return yb_; }

  /// True when every non-constant coefficient is zero.
  bool is_constant() const;

  friend bool operator==(const TrigCurve&, const TrigCurve&) = default;

 private:
  std::size_t degree_;
  std::vector<double> xa_, xb_, ya_, yb_;
};

/// Point and velocity at one parameter value.
struct CurveJet {
  PlanePoint point;
  Vec2 velocity;
};

/// Reduce an angle into [0, 2*pi).
double wrap_angle(double phi);

PlanePoint evaluate(const TrigCurve& c, double phi);
Vec2 derivative(const TrigCurve& c, double phi);
CurveJet evaluate_jet(const TrigCurve& c, double phi);

/// tau_j(r) = 1 + j^2 + ... + j^(2r) in floating point.
double tau_weight(std::size_t j, SobolevOrder r);

/// 2(a0 c0 + a0~ c0~) + sum_j tau_j (a_j c_j + b_j d_j + a_j~ c_j~ + b_j~ d_j~).
/// Throws PreconditionError on degree mismatch.
double inner_product(const TrigCurve& c1, const TrigCurve& c2, SobolevOrder r);
double norm(const TrigCurve& c, SobolevOrder r);

/// Upper bound on the speed |c'(phi)| over the whole circle.
///
/// Uses the spectral norm of each 2x2 harmonic block, which never exceeds
/// sqrt(a_j^2 + b_j^2) + sqrt(c_j^2 + d_j^2).
double lipschitz_bound(const TrigCurve& c);

/// Upper bound on |c''(phi)|, built the same way with weights j^2.
double curvature_speed_bound(const TrigCurve& c);

/// mu(N, r) = 1 + 2 sum_j 1/tau_j in floating point.
double mu_value(std::size_t degree, SobolevOrder r);

/// Largest |c(phi)| over all curves in the unit ball of the r-metric:
/// sqrt(mu(N, r) / 2).
double point_radius_bound(std::size_t degree, SobolevOrder r);

}  // namespace curvecross
