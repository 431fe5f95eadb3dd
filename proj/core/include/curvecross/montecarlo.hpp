#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <variant>
#include <vector>

#include "curvecross/exact.hpp"
#include "curvecross/intersection.hpp"
#include "curvecross/rng.hpp"

namespace curvecross {

struct UniformPairs {};
/// Density proportional to max(norm f, norm g)^exponent.
struct MaxNormWeighted {
  double exponent = 0.0;
};
using PairDistribution = std::variant<UniformPairs, MaxNormWeighted>;

struct ExperimentConfig {
  unsigned n = 1;
  SobolevOrder r{};
  std::uint64_t num_samples = 1;
  std::uint64_t master_seed = 0;
  unsigned worker_count = 1;
  CountingConfig counting{};
  PairDistribution distribution{UniformPairs{}};
  /// Keep per-sample records in the result (for CSV export).
  bool keep_records = false;

  /// Throws PreconditionError.
  void validate() const;
};

struct SampleRecord {
  std::uint64_t index = 0;
  std::size_t count = 0;
  bool degenerate = false;
};

struct ExperimentResult {
  double mean = 0.0;
  double variance = 0.0;
  double std_error = 0.0;
  std::pair<double, double> ci95{0.0, 0.0};
  /// intersection count -> number of non-degenerate samples
  std::map<std::size_t, std::uint64_t> histogram;
  std::uint64_t degenerate_discards = 0;
  std::uint64_t samples_used = 0;
  MeanValue exact;
  double z_score_vs_exact = 0.0;
  /// Set when more than 1% of the samples were discarded as degenerate.
  bool discard_warning = false;
  std::vector<SampleRecord> records;

  double discard_rate() const;
};

/// Sample i uses SeedSpec{master_seed, i}; per-sample results are merged in
/// index order, so the outcome does not depend on worker_count.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct HistogramBin {
  std::size_t intersections = 0;
  double frequency = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

struct DistributionEstimate {
  /// Every even count from 0 to 4N^2 plus any other observed count.
  std::vector<HistogramBin> bins;
  /// Normal quantile used for the Bonferroni-adjusted Wilson bands.
  double z_critical = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples_used = 0;
};

/// Normalized count histogram (empirical relative volumes A_i) with
/// simultaneous 95% Wilson bands.
DistributionEstimate estimate_distribution(const ExperimentConfig& cfg);
DistributionEstimate distribution_from(const ExperimentResult& result, unsigned n);

/// Wilson score interval for `successes` out of `trials` at normal quantile z.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z);

/// z-score of the max-norm-weighted estimate (L2 metric) against the uniform
/// exact mean. Throws PreconditionError for a negative exponent.
double max_norm_invariance_check(unsigned n, double exponent, std::uint64_t samples, std::uint64_t seed,
                        unsigned workers = 1);

}  // namespace curvecross
