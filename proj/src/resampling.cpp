#include "sphgof/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "sphgof/errors.hpp"
#include "sphgof/samplers.hpp"

namespace sphgof {

namespace {

void validate_config(const TestConfig& config) {
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw InvalidConfigError("significance level alpha must lie in (0, 1); got " +
                             std::to_string(config.alpha));
  }
  if (config.m == 0) {
    throw InvalidConfigError("artificial sample size m must be positive");
  }
  if (config.b < 19) {
    throw InvalidConfigError("at least 19 resampling replicates are required; got " +
                             std::to_string(config.b));
  }
  if (config.b < 99) {
    std::fprintf(stderr,
                 "warning: only %zu resampling replicates; critical values "
                 "will be coarse (99 or more recommended)\n",
                 config.b);
  }
}

TestResult finalize(const StatisticValue& observed, std::vector<double> reps,
                    double alpha, std::size_t requested, std::size_t dropped) {
  TestResult result;
  result.statistic_observed = observed;
  result.replicates_requested = requested;
  result.replicates_dropped = dropped;
  std::size_t at_least = 0;
  for (const double t : reps) {
    if (t >= observed.t) {
      ++at_least;
    }
  }
  result.p_value = (1.0 + static_cast<double>(at_least)) /
                   (static_cast<double>(reps.size()) + 1.0);
  result.critical_value = empirical_quantile(reps, 1.0 - alpha);
  result.reject = observed.t > result.critical_value;
  result.replicate_statistics = std::move(reps);
  return result;
}

// Copies pooled rows selected by `idx` into a fresh sample.
Sample gather_rows(const Sample& pooled, const std::uint32_t* idx,
                   std::size_t count) {
  const std::size_t d = pooled.dim();
  std::vector<double> rows(count * d);
  for (std::size_t i = 0; i < count; ++i) {
    const auto row = pooled.row(idx[i]);
    std::copy(row.begin(), row.end(), rows.begin() + i * d);
  }
  return Sample(count, d, std::move(rows));
}

}  // namespace

std::string_view to_string(ResamplingMethod method) {
  switch (method) {
    case ResamplingMethod::bootstrap:
      return "bootstrap";
    case ResamplingMethod::permutation:
      return "permutation";
  }
  throw InvalidConfigError("unknown resampling method enumerator");
}

ResamplingMethod parse_resampling_method(std::string_view name) {
  if (name == "bootstrap") {
    return ResamplingMethod::bootstrap;
  }
  if (name == "permutation") {
    return ResamplingMethod::permutation;
  }
  throw InvalidConfigError("unknown resampling method '" + std::string(name) +
                           "'; expected bootstrap or permutation");
}

double empirical_quantile(std::vector<double> values, double q) {
  if (values.empty()) {
    throw EmptyInputError("empirical quantile of an empty collection");
  }
  if (!(q > 0.0 && q <= 1.0)) {
    throw InvalidConfigError("quantile level must lie in (0, 1]; got " +
                             std::to_string(q));
  }
  const auto b = static_cast<double>(values.size());
  // Small backoff keeps ceil() exact when q*b is an integer in real
  // arithmetic but lands just above it in floating point.
  auto k = static_cast<std::size_t>(std::ceil(q * b - 1e-9));
  k = std::clamp<std::size_t>(k, 1, values.size());
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   values.end());
  return values[k - 1];
}

TestResult test_simple(const Sample& x, const DistributionSpec& null_spec,
                       const TestConfig& config) {
  validate_config(config);
  if (dimension(null_spec) != x.dim()) {
    throw DimensionError("null distribution lives on S^" +
                         std::to_string(dimension(null_spec) - 1) +
                         " but the data have dimension " +
                         std::to_string(x.dim()));
  }
  const std::size_t n = x.size();
  const std::size_t m = config.m;
  const Sample y = sample(null_spec, m, config.seed.substream(0));
  const StatisticValue observed = compute_statistic(x, y, config.kernel);

  const Sample pooled = Sample::concat(x, y);
  const std::size_t total = n + m;
  const double inv_n = 1.0 / static_cast<double>(n);
  const double inv_m = 1.0 / static_cast<double>(m);
  const double scale =
      static_cast<double>(n) * static_cast<double>(m) / static_cast<double>(total);
  const auto gram = GramMatrix::build(pooled, config.kernel, config.gram_cap_bytes);

  std::vector<double> reps(config.b);
  const bool par = !detail::in_parallel_region();
#pragma omp parallel for schedule(dynamic) if (par)
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(config.b); ++j) {
    RandomStream rs(config.seed.substream(1 + static_cast<std::uint64_t>(j)));
    double t = 0.0;
    if (config.method == ResamplingMethod::bootstrap) {
      std::vector<std::uint32_t> draw_x(n);
      std::vector<std::uint32_t> draw_y(m);
      for (std::size_t i = 0; i < n; ++i) {
        draw_x[i] = static_cast<std::uint32_t>(rs.next_index(total));
      }
      for (std::size_t i = 0; i < m; ++i) {
        draw_y[i] = static_cast<std::uint32_t>(rs.next_index(total));
      }
      if (gram) {
        std::vector<std::int32_t> count_x(total, 0);
        std::vector<std::int32_t> count_y(total, 0);
        for (const auto p : draw_x) {
          ++count_x[p];
        }
        for (const auto p : draw_y) {
          ++count_y[p];
        }
        std::vector<double> weight(total);
        for (std::size_t p = 0; p < total; ++p) {
          weight[p] = static_cast<double>(count_x[p]) * inv_n -
                      static_cast<double>(count_y[p]) * inv_m;
        }
        t = scale * gram->quadform(weight);
      } else {
        const Sample xs = gather_rows(pooled, draw_x.data(), n);
        const Sample ys = gather_rows(pooled, draw_y.data(), m);
        t = compute_statistic(xs, ys, config.kernel).t;
      }
    } else {
      std::vector<std::uint32_t> perm(total);
      std::iota(perm.begin(), perm.end(), 0U);
      rs.shuffle(perm);
      if (gram) {
        std::vector<double> weight(total);
        for (std::size_t i = 0; i < total; ++i) {
          weight[perm[i]] = (i < n) ? inv_n : -inv_m;
        }
        t = scale * gram->quadform(weight);
      } else {
        const Sample xs = gather_rows(pooled, perm.data(), n);
        const Sample ys = gather_rows(pooled, perm.data() + n, m);
        t = compute_statistic(xs, ys, config.kernel).t;
      }
    }
    reps[static_cast<std::size_t>(j)] = t;
  }

  return finalize(observed, std::move(reps), config.alpha, config.b, 0);
}

TestResult test_composite(const Sample& x, FitFamily family,
                          const TestConfig& config) {
  validate_config(config);
  const std::size_t n = x.size();
  const std::size_t m = config.m;
  FitResult fit0 = fit(family, x);
  const Sample y = sample(fit0.spec, m, config.seed.substream(0));
  const StatisticValue observed = compute_statistic(x, y, config.kernel);

  constexpr std::size_t kMaxRedraws = 10;
  std::vector<double> reps(config.b, std::numeric_limits<double>::quiet_NaN());
  std::size_t dropped = 0;
  std::string first_failure;
  const bool par = !detail::in_parallel_region();
#pragma omp parallel for schedule(dynamic) reduction(+ : dropped) if (par)
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(config.b); ++j) {
    const SeedStream rep_seed =
        config.seed.substream(1 + static_cast<std::uint64_t>(j));
    bool done = false;
    for (std::size_t attempt = 0; attempt < kMaxRedraws && !done; ++attempt) {
      try {
        const Sample xstar =
            sample(fit0.spec, n, rep_seed.substream(2 * attempt));
        const FitResult refit = fit(family, xstar);
        const Sample ystar =
            sample(refit.spec, m, rep_seed.substream(2 * attempt + 1));
        const double t = compute_statistic(xstar, ystar, config.kernel).t;
        reps[static_cast<std::size_t>(j)] = t;
        done = true;
      } catch (const Error& e) {
#pragma omp critical(sphgof_composite_failure)
        {
          if (first_failure.empty()) {
            first_failure = e.what();
          }
        }
      }
    }
    if (!done) {
      dropped += 1;
    }
  }

  if (dropped * 20 > config.b) {
    throw FitFailedError(
        "composite test aborted: " + std::to_string(dropped) + " of " +
        std::to_string(config.b) + " " + std::string(to_string(family)) +
        " refits failed after " + std::to_string(kMaxRedraws) +
        " redraws each (first failure: " +
        (first_failure.empty() ? "unknown" : first_failure) + ")");
  }

  std::vector<double> kept;
  kept.reserve(config.b);
  for (const double t : reps) {
    if (!std::isnan(t)) {
      kept.push_back(t);
    }
  }
  TestResult result =
      finalize(observed, std::move(kept), config.alpha, config.b, dropped);
  result.fitted = std::move(fit0);
  return result;
}

}  // namespace sphgof
