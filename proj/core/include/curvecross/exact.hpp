#pragma once

// Exact rational evaluation of the closed-form intersection means.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "curvecross/curve.hpp"

namespace curvecross {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(long long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  ExactRational(const BigInt& v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  /// Throws PreconditionError when den == 0.
  ExactRational(const BigInt& num, const BigInt& den);

  BigInt numerator() const;
  BigInt denominator() const;

  /// Round-to-nearest double. Numerator and denominator are rescaled by a
  /// common power of two first, so huge operands never overflow.
  double to_double() const;
  /// "p/q", or "p" when q == 1.
  std::string to_string() const;

  bool is_zero() const;
  int sign() const;

  ExactRational& operator+=(const ExactRational& o);
  ExactRational& operator-=(const ExactRational& o);
  ExactRational& operator*=(const ExactRational& o);
  ExactRational& operator/=(const ExactRational& o);

  friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
  friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
  friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
  friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }

  friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.value_ == b.value_; }
  friend bool operator<(const ExactRational& a, const ExactRational& b) { return a.value_ < b.value_; }

 private:
  using Rep = boost::multiprecision::cpp_rational;
  explicit ExactRational(Rep v) : value_(std::move(v)) {}
  Rep value_{0};
};

/// An exact value paired with its nearest double.
struct MeanValue {
  ExactRational exact;
  double approx = 0.0;
};

BigInt factorial(unsigned n);

/// tau_j(r) = sum_{q=0}^{r} j^(2q). Requires j >= 1.
BigInt tau(unsigned j, SobolevOrder r);
/// mu(N, r) = 1 + 2 sum_{j=1}^{N} 1/tau_j.
ExactRational mu(unsigned n, SobolevOrder r);
/// lambda_r(N)^2 = sum_{j=1}^{N} j^2/tau_j.
ExactRational lambda_sq(unsigned n, SobolevOrder r);

/// coefficient * pi^pi_power.
struct PiMultiple {
  ExactRational coefficient;
  unsigned pi_power = 0;

  double approx() const;
};

/// Volume of the unit ball in R^(2k): pi^k / k!. Requires k >= 1.
PiMultiple ball_volume_even(unsigned k);

/// Expected number of intersection points of two curves drawn uniformly
/// from the unit ball of the W_2^r metric:
///
///   2^(8N+3) lambda_r(N)^2 ((2N)!)^4 (2N+1) / (mu(N) ((4N+1)!)^2).
MeanValue mean_intersections_exact(unsigned n, SobolevOrder r);

/// The L2 formula evaluated literally:
///   2^(8N+3) ((2N)!)^4 / ((4N+1)!)^2 * (1 + 4 + ... + N^2).
/// Kept separate so the general formula can be checked against it.
MeanValue mean_intersections_l2(unsigned n);

/// mean_intersections_exact(N, 0) / ((pi/3) N^2). Requires N >= 1.
double asymptote_ratio(unsigned n);

struct SobolevLimitRow {
  unsigned n = 0;
  MeanValue mean;
};

struct SobolevLimitReport {
  SobolevOrder r;
  std::vector<SobolevLimitRow> rows;
  /// 2 pi lambda_r(inf)^2 / mu(inf); only present for r >= 2 where both
  /// series converge.
  std::optional<double> limit;
  /// Relative bracket width of the summed series at termination.
  std::optional<double> limit_relative_error;
  std::optional<double> ratio_to_2pi_over_r_sq;
  std::optional<double> ratio_to_2pi_over_r_plus_1;
};

/// Evaluates the W_2^r mean over ascending degrees and the candidate N -> inf
/// limit. Throws PreconditionError for r == 0, an empty or non-ascending list.
SobolevLimitReport sobolev_limit_report(SobolevOrder r, const std::vector<unsigned>& degrees);

struct SeriesLimits {
  double lambda_sq = 0.0;
  double mu = 0.0;
  double relative_error = 0.0;
  std::size_t terms = 0;
};

/// Sums lambda_r(inf)^2 and mu(inf) until the integral-comparison bracket on
/// the remaining tail is below rel_tol of the total. Requires r >= 2.
SeriesLimits sobolev_series_limits(SobolevOrder r, double rel_tol = 1e-12);

}  // namespace curvecross
