#include "curvecross/exact.hpp"

#include <cmath>
#include <numbers>

#include "curvecross/error.hpp"

namespace curvecross {

namespace mp = boost::multiprecision;

ExactRational::ExactRational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw PreconditionError("zero denominator");
  // Boost 1.74 rejects a negative denominator, so the sign moves up first.
  value_ = den < 0 ? Rep(BigInt(-num), BigInt(-den)) : Rep(num, den);
}

BigInt ExactRational::numerator() const { return mp::numerator(value_); }
BigInt ExactRational::denominator() const { return mp::denominator(value_); }

bool ExactRational::is_zero() const { return value_ == 0; }
int ExactRational::sign() const { return value_.sign(); }

double ExactRational::to_double() const {
  const BigInt num = mp::abs(numerator());
  const BigInt den = denominator();
  if (num == 0) return 0.0;

  // Scale so that the integer quotient carries at least 64 significant bits;
  // the truncated tail then perturbs the result by well under one ulp.
  const long long shift = 66 + static_cast<long long>(mp::msb(den)) - static_cast<long long>(mp::msb(num));
  BigInt q, rem;
  if (shift >= 0) {
    mp::divide_qr(BigInt(num << shift), den, q, rem);
  } else {
    mp::divide_qr(num, BigInt(den << -shift), q, rem);
  }
  const unsigned excess = mp::msb(q) > 62 ? static_cast<unsigned>(mp::msb(q) - 62) : 0u;
  // Keep a sticky bit so that the final conversion rounds correctly.
  const bool sticky = rem != 0 || (excess > 0 && (q & ((BigInt(1) << excess) - 1)) != 0);
  q >>= excess;
  auto top = q.convert_to<unsigned long long>();
  if (sticky) top |= 1ull;
  const double result = std::ldexp(static_cast<double>(top), static_cast<int>(excess) - static_cast<int>(shift));
  return sign() < 0 ? -result : result;
}

std::string ExactRational::to_string() const {
  const BigInt den = denominator();
  if (den == 1) return numerator().str();
  return numerator().str() + "/" + den.str();
}

ExactRational& ExactRational::operator+=(const ExactRational& o) {
  value_ += o.value_;
  return *this;
}
ExactRational& ExactRational::operator-=(const ExactRational& o) {
  value_ -= o.value_;
  return *this;
}
ExactRational& ExactRational::operator*=(const ExactRational& o) {
  value_ *= o.value_;
  return *this;
}
ExactRational& ExactRational::operator/=(const ExactRational& o) {
  if (o.is_zero()) throw PreconditionError("division by zero");
  value_ /= o.value_;
  return *this;
}

double PiMultiple::approx() const {
  return coefficient.to_double() * std::pow(std::numbers::pi, static_cast<double>(pi_power));
}

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt tau(unsigned j, SobolevOrder r) {
  if (j == 0) throw PreconditionError("tau requires j >= 1");
  const BigInt j2 = BigInt(j) * j;
  BigInt term = 1, sum = 1;
  for (unsigned q = 1; q <= r.r; ++q) {
    term *= j2;
    sum += term;
  }
  return sum;
}

ExactRational mu(unsigned n, SobolevOrder r) {
  ExactRational sum = 0;
  for (unsigned j = 1; j <= n; ++j) sum += ExactRational(BigInt(1), tau(j, r));
  return ExactRational(1) + ExactRational(2) * sum;
}

ExactRational lambda_sq(unsigned n, SobolevOrder r) {
  ExactRational sum = 0;
  for (unsigned j = 1; j <= n; ++j) sum += ExactRational(BigInt(j) * j, tau(j, r));
  return sum;
}

PiMultiple ball_volume_even(unsigned k) {
  if (k == 0) throw PreconditionError("ball_volume_even requires k >= 1");
  return {ExactRational(BigInt(1), factorial(k)), k};
}

namespace {

MeanValue make_mean(ExactRational v) {
  const double approx = v.to_double();
  return {std::move(v), approx};
}

// 2^(8N+3) ((2N)!)^4 / ((4N+1)!)^2
ExactRational shared_prefactor(unsigned n) {
  BigInt pow2 = 1;
  pow2 <<= (8 * n + 3);
  const BigInt f2n = factorial(2 * n);
  const BigInt f4n1 = factorial(4 * n + 1);
  return ExactRational(pow2 * f2n * f2n * f2n * f2n, f4n1 * f4n1);
}

}  // namespace

MeanValue mean_intersections_exact(unsigned n, SobolevOrder r) {
  ExactRational v = shared_prefactor(n) * lambda_sq(n, r) * ExactRational(2 * n + 1) / mu(n, r);
  return make_mean(std::move(v));
}

MeanValue mean_intersections_l2(unsigned n) {
  BigInt squares = 0;
  for (unsigned j = 1; j <= n; ++j) squares += BigInt(j) * j;
  return make_mean(shared_prefactor(n) * ExactRational(squares));
}

double asymptote_ratio(unsigned n) {
  if (n == 0) throw PreconditionError("asymptote_ratio requires N >= 1");
  const double nd = static_cast<double>(n);
  return mean_intersections_exact(n, SobolevOrder{0}).approx / (std::numbers::pi / 3.0 * nd * nd);
}

namespace {

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

SeriesLimits sobolev_series_limits(SobolevOrder r, double rel_tol) {
  if (r.r < 2) throw PreconditionError("series limits converge only for r >= 2");
  const double two_r = 2.0 * r.r;

  CompensatedSum lam, inv_tau;
  std::size_t j = 0;
  std::size_t checkpoint = 4;
  constexpr std::size_t max_terms = std::size_t{1} << 26;
  while (true) {
    while (j < checkpoint) {
      ++j;
      const double t = tau_weight(j, r);
      const double jd = static_cast<double>(j);
      lam.add(jd * jd / t);
      inv_tau.add(1.0 / t);
    }
    // With u = x^-2, x^2/tau(x) = x^(2-2r) (1-u)/(1-u^(r+1)) lies between
    // x^(2-2r) - x^(-2r) and x^(2-2r); 1/tau(x) is bracketed the same way.
    // Both brackets are decreasing for x >= 2, so integral comparison bounds
    // the tails from either side.
    const double jd = static_cast<double>(j);
    const double j1 = jd + 1.0;
    const double lam_hi = std::pow(jd, 3.0 - two_r) / (two_r - 3.0);
    const double lam_lo = std::pow(j1, 3.0 - two_r) / (two_r - 3.0) - std::pow(j1, 1.0 - two_r) / (two_r - 1.0);
    const double tau_hi = std::pow(jd, 1.0 - two_r) / (two_r - 1.0);
    const double tau_lo = std::pow(j1, 1.0 - two_r) / (two_r - 1.0) - std::pow(j1, -1.0 - two_r) / (two_r + 1.0);

    const double lambda_mid = lam.value() + 0.5 * (lam_hi + lam_lo);
    const double mu_mid = 1.0 + 2.0 * (inv_tau.value() + 0.5 * (tau_hi + tau_lo));
    const double rel = 0.5 * (lam_hi - lam_lo) / lambda_mid + (tau_hi - tau_lo) / mu_mid;
    if (rel < rel_tol || j >= max_terms) {
      return {lambda_mid, mu_mid, rel, j};
    }
    checkpoint *= 2;
  }
}

SobolevLimitReport sobolev_limit_report(SobolevOrder r, const std::vector<unsigned>& degrees) {
  if (r.r == 0) throw PreconditionError("the L2 mean grows without bound; no finite limit to report");
  if (degrees.empty()) throw PreconditionError("degree list must be non-empty");
  for (std::size_t i = 1; i < degrees.size(); ++i) {
    if (degrees[i] <= degrees[i - 1]) throw PreconditionError("degree list must be strictly ascending");
  }

  SobolevLimitReport report;
  report.r = r;
  for (unsigned n : degrees) report.rows.push_back({n, mean_intersections_exact(n, r)});

  if (r.r >= 2) {
    const SeriesLimits s = sobolev_series_limits(r);
    const double limit = 2.0 * std::numbers::pi * s.lambda_sq / s.mu;
    const double rd = static_cast<double>(r.r);
    report.limit = limit;
    report.limit_relative_error = s.relative_error;
    report.ratio_to_2pi_over_r_sq = limit / (2.0 * std::numbers::pi / (rd * rd));
    report.ratio_to_2pi_over_r_plus_1 = limit / (2.0 * std::numbers::pi / (rd + 1.0));
  }
  return report;
}

}  // namespace curvecross
