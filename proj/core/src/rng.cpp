#include "curvecross/rng.hpp"

#include <cmath>
#include <numbers>

namespace curvecross {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

SeedSpec derive_seed(const SeedSpec& parent, std::uint64_t salt) {
  return {parent.master_seed, splitmix64(parent.stream_index ^ splitmix64(salt + 0x5851F42D4C957F2Dull))};
}

StreamRng::StreamRng(const SeedSpec& seed)
    : engine_(splitmix64(seed.master_seed ^ splitmix64(seed.stream_index))) {}

double StreamRng::uniform_open() {
  // (k + 0.5) / 2^53 for k uniform in [0, 2^53).
  const std::uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double StreamRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace curvecross
