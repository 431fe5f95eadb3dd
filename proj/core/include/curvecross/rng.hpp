#pragma once

#include <cstdint>
#include <random>

namespace curvecross {

/// Identifies one independent random stream. Equal specs reproduce equal
/// draws on every platform and for every worker count.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

std::uint64_t splitmix64(std::uint64_t x);

/// A child stream of `parent`, keyed by `salt`. Children with distinct salts
/// are statistically independent of each other and of the parent.
SeedSpec derive_seed(const SeedSpec& parent, std::uint64_t salt);

/// Random source for one stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The distributions are implemented here because the standard
/// library ones are implementation-defined.
class StreamRng {
 public:
  explicit StreamRng(const SeedSpec& seed);

  /// Uniform on the open interval (0, 1), 53 random bits.
  double uniform_open();
  /// Standard normal (Box-Muller).
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace curvecross
