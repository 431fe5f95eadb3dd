#include "curvecross/sampling.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "curvecross/error.hpp"

namespace curvecross {

namespace {

constexpr std::uint64_t kFirstCurveSalt = 1;
constexpr std::uint64_t kSecondCurveSalt = 2;
constexpr std::uint64_t kRejectionAttemptSalt = 0x100000000ull;
constexpr std::uint64_t kRejectionCoinSalt = 0x200000000ull;

// Uniform point of the radius-`radius` ball in R^dim.
std::vector<double> uniform_ball_point(std::size_t dim, double radius, StreamRng& rng) {
  std::vector<double> u(dim);
  double sq = 0.0;
  for (double& v : u) {
    v = rng.normal();
    sq += v * v;
  }
  const double scale = radius * std::pow(rng.uniform_open(), 1.0 / static_cast<double>(dim)) / std::sqrt(sq);
  for (double& v : u) v *= scale;
  return u;
}

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

std::size_t curve_dimension(std::size_t degree) { return 2 * (2 * degree + 1); }

TrigCurve curve_from_isometric(std::span<const double> u, std::size_t degree, SobolevOrder r) {
  if (u.size() != curve_dimension(degree)) throw PreconditionError("isometric vector has the wrong length");
  std::vector<double> xa(degree + 1), xb(degree), ya(degree + 1), yb(degree);
  xa[0] = u[0] / std::numbers::sqrt2;
  ya[0] = u[1] / std::numbers::sqrt2;
  for (std::size_t j = 1; j <= degree; ++j) {
    const double s = std::sqrt(tau_weight(j, r));
    const std::size_t base = 2 + 4 * (j - 1);
    xa[j] = u[base] / s;
    xb[j - 1] = u[base + 1] / s;
    ya[j] = u[base + 2] / s;
    yb[j - 1] = u[base + 3] / s;
  }
  return TrigCurve(std::move(xa), std::move(xb), std::move(ya), std::move(yb));
}

std::vector<double> isometric_coordinates(const TrigCurve& c, SobolevOrder r) {
  std::vector<double> u(curve_dimension(c.degree()));
  u[0] = c.xa()[0] * std::numbers::sqrt2;
  u[1] = c.ya()[0] * std::numbers::sqrt2;
  for (std::size_t j = 1; j <= c.degree(); ++j) {
    const double s = std::sqrt(tau_weight(j, r));
    const std::size_t base = 2 + 4 * (j - 1);
    u[base] = c.xa()[j] * s;
    u[base + 1] = c.xb()[j - 1] * s;
    u[base + 2] = c.ya()[j] * s;
    u[base + 3] = c.yb()[j - 1] * s;
  }
  return u;
}

TrigCurve sample_unit_ball_curve(std::size_t degree, SobolevOrder r, const SeedSpec& seed) {
  StreamRng rng(seed);
  const auto u = uniform_ball_point(curve_dimension(degree), 1.0, rng);
  return curve_from_isometric(u, degree, r);
}

CurvePair sample_pair(std::size_t degree, SobolevOrder r, const SeedSpec& seed) {
  return {sample_unit_ball_curve(degree, r, derive_seed(seed, kFirstCurveSalt)),
          sample_unit_ball_curve(degree, r, derive_seed(seed, kSecondCurveSalt))};
}

CurvePair sample_max_norm_weighted_pair(std::size_t degree, SobolevOrder r, double exponent,
                                        const SeedSpec& seed) {
  if (!(exponent >= 0.0)) throw PreconditionError("weight exponent must be non-negative");
  for (std::uint64_t attempt = 0;; ++attempt) {
    const SeedSpec pair_seed = attempt == 0 ? seed : derive_seed(seed, kRejectionAttemptSalt + attempt);
    CurvePair pair = sample_pair(degree, r, pair_seed);
    if (exponent == 0.0) return pair;
    const double weight = std::pow(std::max(norm(pair.f, r), norm(pair.g, r)), exponent);
    StreamRng coin(derive_seed(seed, kRejectionCoinSalt + attempt));
    if (coin.uniform_open() < weight) return pair;
  }
}

FiberBasis::FiberBasis(std::size_t degree)
    : degree_(degree), rows_(0), cols_(2 * curve_dimension(degree)) {
  if (degree == 0) throw PreconditionError("the incidence fiber needs degree >= 1");
  const std::size_t half = curve_dimension(degree);

  // Normals of the two constraints x_f(0) = x_g(0) and y_f(0) = y_g(0).
  std::vector<std::vector<double>> normals(2, std::vector<double>(cols_, 0.0));
  for (int axis = 0; axis < 2; ++axis) {
    auto& n = normals[static_cast<std::size_t>(axis)];
    const std::size_t constant_slot = static_cast<std::size_t>(axis);
    n[constant_slot] = 1.0 / std::numbers::sqrt2;
    n[half + constant_slot] = -1.0 / std::numbers::sqrt2;
    for (std::size_t j = 1; j <= degree; ++j) {
      const std::size_t slot = 2 + 4 * (j - 1) + 2 * static_cast<std::size_t>(axis);
      n[slot] = 1.0;
      n[half + slot] = -1.0;
    }
  }

  // Gram-Schmidt: the normals first, then the standard basis.
  std::vector<std::vector<double>> ortho;
  auto add_orthogonalized = [&](std::vector<double> v) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : ortho) {
        double dot = 0.0;
        for (std::size_t k = 0; k < cols_; ++k) dot += v[k] * q[k];
        for (std::size_t k = 0; k < cols_; ++k) v[k] -= dot * q[k];
      }
    }
    const double len = std::sqrt(squared_norm(v));
    if (len < 1e-8) return;
    for (double& x : v) x /= len;
    ortho.push_back(std::move(v));
  };
  for (auto& n : normals) add_orthogonalized(n);
  for (std::size_t i = 0; i < cols_ && ortho.size() < cols_; ++i) {
    std::vector<double> e(cols_, 0.0);
    e[i] = 1.0;
    add_orthogonalized(std::move(e));
  }

  rows_ = cols_ - 2;
  basis_.reserve(rows_ * cols_);
  for (std::size_t i = 2; i < ortho.size(); ++i) basis_.insert(basis_.end(), ortho[i].begin(), ortho[i].end());
}

std::span<const double> FiberBasis::vector(std::size_t i) const {
  return std::span<const double>(basis_).subspan(i * cols_, cols_);
}

const FiberBasis& FiberBasis::for_degree(std::size_t degree) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<FiberBasis>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[degree];
  if (!slot) slot = std::make_unique<FiberBasis>(degree);
  return *slot;
}

std::optional<CurvePair> fiber_attempt(std::size_t degree, const SeedSpec& seed) {
  const FiberBasis& basis = FiberBasis::for_degree(degree);
  StreamRng rng(seed);
  const auto z = uniform_ball_point(basis.dimension(), std::numbers::sqrt2, rng);

  std::vector<double> point(basis.ambient_dimension(), 0.0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    const auto v = basis.vector(i);
    for (std::size_t k = 0; k < point.size(); ++k) point[k] += z[i] * v[k];
  }
  const std::size_t half = curve_dimension(degree);
  const std::span<const double> fu(point.data(), half), gu(point.data() + half, half);
  if (squared_norm(fu) > 1.0 || squared_norm(gu) > 1.0) return std::nullopt;
  return CurvePair{curve_from_isometric(fu, degree, SobolevOrder{0}),
                   curve_from_isometric(gu, degree, SobolevOrder{0})};
}

FiberSample sample_fiber_pair(std::size_t degree, const SeedSpec& seed) {
  if (degree == 0) throw PreconditionError("the incidence fiber needs degree >= 1");
  for (std::uint64_t attempt = 0;; ++attempt) {
    if (auto pair = fiber_attempt(degree, derive_seed(seed, attempt))) {
      const double attempts = static_cast<double>(attempt + 1);
      return {std::move(*pair), attempt + 1, 1.0 / attempts};
    }
  }
}

}  // namespace curvecross
