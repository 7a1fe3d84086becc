// Timing harness contrasting the naive serial statistic with the blocked
// (and optionally multi-threaded) implementation, plus the Gram-matrix
// replicate path used by the resampling loops.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sphgof/kernels.hpp"
#include "sphgof/reference.hpp"
#include "sphgof/rng.hpp"
#include "sphgof/samplers.hpp"
#include "sphgof/statistic.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

template <typename Fn>
double time_best_of(int repeats, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const double elapsed = seconds_since(start);
    if (elapsed < best) best = elapsed;
  }
  return best;
}

}  // namespace

int main() {
  const sphgof::KernelSpec kernel = sphgof::KernelSpec::stable(1.0, 2.0);
  const std::size_t d = 3;

#ifdef _OPENMP
  const int max_threads = omp_get_max_threads();
#else
  const int max_threads = 1;
#endif
  std::printf("threads available: %d\n", max_threads);
  std::printf("%8s %8s %14s %14s %10s %12s\n", "n", "m", "reference[s]",
              "optimized[s]", "speedup", "checksum");

  for (const std::size_t n : {200UL, 500UL, 1000UL, 2000UL}) {
    const std::size_t m = 2 * n;
    const sphgof::Sample x =
        sphgof::sample(sphgof::make_uniform(d), n, sphgof::SeedStream{7, 1});
    const sphgof::Sample y =
        sphgof::sample(sphgof::make_uniform(d), m, sphgof::SeedStream{7, 2});

    double t_ref = 0.0;
    double t_opt = 0.0;
    const double ref_time = time_best_of(
        3, [&] { t_ref = sphgof::reference::compute_statistic(x, y, kernel); });
    const double opt_time = time_best_of(
        3, [&] { t_opt = sphgof::compute_statistic(x, y, kernel).t; });
    const double rel =
        std::abs(t_ref - t_opt) / std::max(1e-300, std::abs(t_ref));
    std::printf("%8zu %8zu %14.6f %14.6f %9.2fx %12.3e\n", n, m, ref_time,
                opt_time, ref_time / std::max(1e-12, opt_time), rel);
  }

  // Replicate throughput: one Gram build amortized over many weighted
  // quadratic forms, versus recomputing the statistic from gathered rows.
  {
    const std::size_t n = 500;
    const std::size_t m = 1000;
    const std::size_t total = n + m;
    const sphgof::Sample x =
        sphgof::sample(sphgof::make_uniform(d), n, sphgof::SeedStream{9, 1});
    const sphgof::Sample y =
        sphgof::sample(sphgof::make_uniform(d), m, sphgof::SeedStream{9, 2});
    const sphgof::Sample pooled = sphgof::Sample::concat(x, y);

    const auto build_start = std::chrono::steady_clock::now();
    const auto gram =
        sphgof::GramMatrix::build(pooled, kernel, sphgof::kDefaultGramCapBytes);
    const double build_time = seconds_since(build_start);

    const int reps = 200;
    std::vector<double> weights(total);
    sphgof::RandomStream rs(sphgof::SeedStream{11, 0});
    double sink = 0.0;
    const auto quad_start = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) {
      std::vector<std::int32_t> cx(total, 0);
      for (std::size_t i = 0; i < n; ++i) cx[rs.next_index(total)] += 1;
      for (std::size_t p = 0; p < total; ++p) {
        weights[p] = static_cast<double>(cx[p]) / static_cast<double>(n) -
                     (p >= n ? 1.0 / static_cast<double>(m) : 0.0);
      }
      sink += gram->quadform(weights);
    }
    const double quad_time = seconds_since(quad_start);

    std::printf("gram build (N=%zu): %.6f s; %d replicate quadforms: %.6f s "
                "(%.1f us each, sink=%.3e)\n",
                total, build_time, reps, quad_time,
                1e6 * quad_time / reps, sink);
  }
  return 0;
}
