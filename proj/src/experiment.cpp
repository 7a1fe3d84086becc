#include "sphgof/experiment.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>

#include "sphgof/errors.hpp"
#include "sphgof/rng.hpp"
#include "sphgof/samplers.hpp"
#include "sphgof/statistic.hpp"

namespace sphgof {

namespace {

// Level-1 tag for the data draw inside one replication's seed stream; far
// outside the {0, 1..b} tags the test procedures consume.
constexpr std::uint64_t kDataDrawTag = 0xDA7A'0001'0000'0000ULL;

void validate_spec(const ExperimentSpec& spec) {
  if (spec.scenarios.empty()) {
    throw InvalidConfigError("power study requires at least one scenario");
  }
  if (spec.kernels.empty()) {
    throw InvalidConfigError("power study requires at least one kernel");
  }
  if (spec.artificial_sizes.empty()) {
    throw InvalidConfigError("power study requires at least one m value");
  }
  for (const std::size_t m : spec.artificial_sizes) {
    if (m == 0) {
      throw InvalidConfigError("artificial sample size m must be positive");
    }
  }
  if (spec.n == 0) {
    throw InvalidConfigError("data sample size n must be positive");
  }
  if (spec.replications == 0) {
    throw InvalidConfigError("replications must be at least 1");
  }
  std::set<std::string> labels;
  for (const auto& scenario : spec.scenarios) {
    if (!labels.insert(scenario.label).second) {
      throw InvalidConfigError("duplicate scenario label '" + scenario.label +
                               "'");
    }
  }
}

}  // namespace

PowerTable run_power_study(const ExperimentSpec& spec,
                           const RowCallback& on_row) {
  validate_spec(spec);
  PowerTable table;
  table.name = spec.name;

  const SeedStream root{spec.seed, 0};
  std::uint64_t combo = 0;
  for (const auto& scenario : spec.scenarios) {
    for (const auto& kernel : spec.kernels) {
      for (const std::size_t m : spec.artificial_sizes) {
        const SeedStream combo_seed = root.substream(combo);
        ++combo;

        std::size_t rejections = 0;
        std::size_t failures = 0;
        const bool par = !detail::in_parallel_region();
#pragma omp parallel for schedule(dynamic) reduction(+ : rejections, failures) \
    if (par)
        for (std::ptrdiff_t r = 0;
             r < static_cast<std::ptrdiff_t>(spec.replications); ++r) {
          const SeedStream rep_seed =
              combo_seed.substream(static_cast<std::uint64_t>(r));
          TestConfig config;
          config.alpha = spec.alpha;
          config.m = m;
          config.b = spec.b;
          config.method = spec.method;
          config.seed = rep_seed;
          config.kernel = kernel;
          try {
            const Sample x = sample(scenario.distribution, spec.n,
                                    rep_seed.substream(kDataDrawTag));
            const TestResult result =
                spec.composite_family
                    ? test_composite(x, *spec.composite_family, config)
                    : test_simple(x, spec.null_spec, config);
            if (result.reject) {
              rejections += 1;
            }
          } catch (const Error&) {
            failures += 1;
          }
        }

        PowerRow row;
        row.scenario = scenario.label;
        row.kernel = kernel.label();
        row.n = spec.n;
        row.m = m;
        row.b = spec.b;
        row.alpha = spec.alpha;
        row.replications = spec.replications;
        row.rejections = rejections;
        row.failures = failures;
        row.rate = static_cast<double>(rejections) /
                   static_cast<double>(spec.replications);
        row.mc_se = std::sqrt(row.rate * (1.0 - row.rate) /
                              static_cast<double>(spec.replications));
        table.rows.push_back(row);
        if (on_row) {
          on_row(table.rows.back());
        }
      }
    }
  }
  return table;
}

}  // namespace sphgof
