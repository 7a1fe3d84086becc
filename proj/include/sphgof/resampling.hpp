#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "sphgof/distributions.hpp"
#include "sphgof/estimators.hpp"
#include "sphgof/kernels.hpp"
#include "sphgof/rng.hpp"
#include "sphgof/statistic.hpp"

namespace sphgof {

enum class ResamplingMethod { bootstrap, permutation };

std::string_view to_string(ResamplingMethod method);
ResamplingMethod parse_resampling_method(std::string_view name);

struct TestConfig {
  double alpha = 0.05;
  std::size_t m = 500;  // artificial sample size drawn from the null
  std::size_t b = 500;  // resampling replicates
  ResamplingMethod method = ResamplingMethod::bootstrap;
  SeedStream seed{0, 0};
  KernelSpec kernel = KernelSpec::stable(1.0, 2.0);
  std::size_t gram_cap_bytes = kDefaultGramCapBytes;
};

struct TestResult {
  StatisticValue statistic_observed{};
  double critical_value = 0.0;
  double p_value = 1.0;
  bool reject = false;
  std::vector<double> replicate_statistics;  // one entry per retained replicate
  std::size_t replicates_requested = 0;
  std::size_t replicates_dropped = 0;  // composite only: failed refits
  std::optional<FitResult> fitted;     // composite only: fit to the data
};

// k-th smallest of `values` with k = ceil(q * values.size()), clamped to a
// valid index; q must lie in (0, 1].  Throws EmptyInputError on no data.
double empirical_quantile(std::vector<double> values, double q);

// Two-sample comparison of `x` against an artificial sample of size config.m
// drawn from `null_spec`; the null distribution of the statistic comes from
// pooled bootstrap or permutation replicates.  The rejection rule is strict:
// reject when the observed statistic exceeds the empirical (1-alpha) quantile
// of the replicates.
TestResult test_simple(const Sample& x, const DistributionSpec& null_spec,
                       const TestConfig& config);

// Composite version: fits `family` to `x`, draws the artificial sample from
// the fitted law, and recalibrates by the parametric bootstrap (each
// replicate refits its own resample).  Replicates whose refit keeps failing
// after 10 fresh redraws are dropped; more than 5% dropped aborts with
// FitFailedError.
TestResult test_composite(const Sample& x, FitFamily family,
                          const TestConfig& config);

}  // namespace sphgof
