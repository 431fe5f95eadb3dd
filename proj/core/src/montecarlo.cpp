#include "curvecross/montecarlo.hpp"

#include <cmath>
#include <limits>

#include <boost/math/distributions/normal.hpp>

#include "curvecross/error.hpp"
#include "curvecross/parallel.hpp"
#include "curvecross/sampling.hpp"

namespace curvecross {

void ExperimentConfig::validate() const {
  if (num_samples < 1) throw PreconditionError("num_samples must be at least 1");
  if (worker_count < 1) throw PreconditionError("worker_count must be at least 1");
  if (const auto* w = std::get_if<MaxNormWeighted>(&distribution); w && !(w->exponent >= 0.0)) {
    throw PreconditionError("weight exponent must be non-negative");
  }
  counting.validate();
}

double ExperimentResult::discard_rate() const {
  const auto total = samples_used + degenerate_discards;
  return total == 0 ? 0.0 : static_cast<double>(degenerate_discards) / static_cast<double>(total);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  CountingConfig counting = cfg.counting;
  counting.metric = cfg.r;

  std::vector<SampleRecord> records(cfg.num_samples);
  parallel_for(cfg.num_samples, cfg.worker_count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const SeedSpec seed{cfg.master_seed, i};
      const CurvePair pair = std::visit(
          [&](const auto& dist) {
            using D = std::decay_t<decltype(dist)>;
            if constexpr (std::is_same_v<D, MaxNormWeighted>) {
              return sample_max_norm_weighted_pair(cfg.n, cfg.r, dist.exponent, seed);
            } else {
              return sample_pair(cfg.n, cfg.r, seed);
            }
          },
          cfg.distribution);
      const IntersectionResult res = count_intersections(pair.f, pair.g, counting);
      records[i] = {i, res.count, res.degenerate};
    }
  });

  ExperimentResult out;
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& rec : records) {
    if (rec.degenerate) {
      ++out.degenerate_discards;
      continue;
    }
    ++out.samples_used;
    ++out.histogram[rec.count];
    const double c = static_cast<double>(rec.count);
    sum += c;
    sum_sq += c * c;
  }

  out.exact = mean_intersections_exact(cfg.n, cfg.r);
  const double used = static_cast<double>(out.samples_used);
  if (out.samples_used > 0) {
    out.mean = sum / used;
    out.variance = out.samples_used > 1 ? std::max(0.0, (sum_sq - used * out.mean * out.mean) / (used - 1.0)) : 0.0;
    out.std_error = std::sqrt(out.variance / used);
  }
  out.ci95 = {out.mean - 1.96 * out.std_error, out.mean + 1.96 * out.std_error};
  const double diff = out.mean - out.exact.approx;
  if (out.std_error > 0.0) {
    out.z_score_vs_exact = diff / out.std_error;
  } else {
    out.z_score_vs_exact = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  out.discard_warning = out.discard_rate() > 0.01;
  if (cfg.keep_records) out.records = std::move(records);
  return out;
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

DistributionEstimate distribution_from(const ExperimentResult& result, unsigned n) {
  std::map<std::size_t, std::uint64_t> counts;
  for (std::size_t i = 0; i <= 4 * static_cast<std::size_t>(n) * n; i += 2) counts[i] = 0;
  for (const auto& [k, v] : result.histogram) counts[k] = v;

  DistributionEstimate est;
  est.samples_used = result.samples_used;
  est.mean = result.mean;
  est.std_error = result.std_error;
  // Bonferroni over the bins gives simultaneous 95% coverage.
  const double alpha = 0.05 / static_cast<double>(counts.size());
  est.z_critical = boost::math::quantile(boost::math::complement(boost::math::normal(), alpha / 2.0));
  for (const auto& [k, v] : counts) {
    const auto [lo, hi] = wilson_interval(v, result.samples_used, est.z_critical);
    const double freq = result.samples_used ? static_cast<double>(v) / static_cast<double>(result.samples_used) : 0.0;
    est.bins.push_back({k, freq, lo, hi});
  }
  return est;
}

DistributionEstimate estimate_distribution(const ExperimentConfig& cfg) {
  return distribution_from(run_experiment(cfg), cfg.n);
}

double max_norm_invariance_check(unsigned n, double exponent, std::uint64_t samples, std::uint64_t seed, unsigned workers) {
  if (!(exponent >= 0.0)) throw PreconditionError("weight exponent must be non-negative");
  ExperimentConfig cfg;
  cfg.n = n;
  cfg.r = SobolevOrder{0};
  cfg.num_samples = samples;
  cfg.master_seed = seed;
  cfg.worker_count = workers;
  cfg.distribution = MaxNormWeighted{exponent};
  return run_experiment(cfg).z_score_vs_exact;
}

}  // namespace curvecross
