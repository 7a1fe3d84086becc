#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sphgof/errors.hpp"
#include "sphgof/geometry.hpp"
#include "sphgof/kernels.hpp"

namespace sphgof {

// Weighted two-sample kernel discrepancy
//   T = n m / (n + m) * [ n^-2 sum C(Xj - Xk) - 2/(nm) sum C(Xj - Yk)
//                         + m^-2 sum C(Yj - Yk) ],
// diagonals included.  Nonnegative up to rounding for both kernel families.
struct StatisticValue {
  double t = 0.0;
  std::size_t n = 0;
  std::size_t m = 0;
  KernelSpec kernel;
};

StatisticValue compute_statistic(const Sample& x, const Sample& y,
                                 const KernelSpec& kernel);

// The unscaled quadratic form ((m+n)/(mn)) * T: a consistent estimate of the
// integrated squared characteristic-function distance between the two laws.
double delta_hat(const Sample& x, const Sample& y, const KernelSpec& kernel);

// Cached kernel matrix over one pooled sample, used to price bootstrap and
// permutation replicates as weighted quadratic forms without re-evaluating
// the kernel.  build() refuses (returns nullopt) when n*n*8 bytes exceeds
// cap_bytes; callers then fall back to streaming evaluation.
inline constexpr std::size_t kDefaultGramCapBytes = std::size_t{1} << 30;

class GramMatrix {
 public:
  static std::optional<GramMatrix> build(const Sample& pooled,
                                         const KernelSpec& kernel,
                                         std::size_t cap_bytes = kDefaultGramCapBytes);

  std::size_t size() const { return n_; }

  // w' G w accumulated in a fixed serial order (diagonal plus doubled upper
  // triangle), so results do not depend on thread count.
  double quadform(std::span<const double> w) const;

 private:
  GramMatrix(std::size_t n, std::vector<double> g) : n_(n), g_(std::move(g)) {}
  std::size_t n_ = 0;
  std::vector<double> g_;
};

namespace detail {

inline bool in_parallel_region() {
#ifdef _OPENMP
  return omp_in_parallel() != 0;
#else
  return false;
#endif
}

// Fixed row-block width for deterministic reductions: per-block partial sums
// are computed in index order and combined in block order, so the result is
// identical for any thread count or schedule.
inline constexpr std::size_t kRowBlock = 128;

// sum_{j,k in [0,n)} f(row j, row k), diagonal included.  f must be a
// symmetric pair kernel on two row pointers.
template <class PairFn>
double sum_within(const double* x, std::size_t n, std::size_t d, PairFn f) {
  const std::size_t nb = (n + kRowBlock - 1) / kRowBlock;
  std::vector<double> partial(nb, 0.0);
  const bool par = n >= 512 && !in_parallel_region();
#pragma omp parallel for schedule(dynamic) if (par)
  for (long bi = 0; bi < static_cast<long>(nb); ++bi) {
    const std::size_t j0 = static_cast<std::size_t>(bi) * kRowBlock;
    const std::size_t j1 = j0 + kRowBlock < n ? j0 + kRowBlock : n;
    double acc = 0.0;
    for (std::size_t j = j0; j < j1; ++j) {
      const double* xj = x + j * d;
      for (std::size_t k = j + 1; k < n; ++k) acc += f(xj, x + k * d, d);
    }
    partial[static_cast<std::size_t>(bi)] = acc;
  }
  double upper = 0.0;
  for (double p : partial) upper += p;
  double diag = 0.0;
  for (std::size_t j = 0; j < n; ++j) diag += f(x + j * d, x + j * d, d);
  return 2.0 * upper + diag;
}

// sum_{j in [0,n), k in [0,m)} f(x row j, y row k).  When n == m the terms
// are visited as matched pairs (j,k),(k,j) added together, which makes the
// result bit-identical under exchanging the roles of x and y.
template <class PairFn>
double sum_cross(const double* x, std::size_t n, const double* y, std::size_t m,
                 std::size_t d, PairFn f) {
  const std::size_t nb = (n + kRowBlock - 1) / kRowBlock;
  std::vector<double> partial(nb, 0.0);
  const bool par = n * m >= 262144 && !in_parallel_region();
  if (n == m) {
#pragma omp parallel for schedule(dynamic) if (par)
    for (long bi = 0; bi < static_cast<long>(nb); ++bi) {
      const std::size_t j0 = static_cast<std::size_t>(bi) * kRowBlock;
      const std::size_t j1 = j0 + kRowBlock < n ? j0 + kRowBlock : n;
      double acc = 0.0;
      for (std::size_t j = j0; j < j1; ++j) {
        acc += f(x + j * d, y + j * d, d);
        for (std::size_t k = j + 1; k < n; ++k) {
          acc += f(x + j * d, y + k * d, d) + f(x + k * d, y + j * d, d);
        }
      }
      partial[static_cast<std::size_t>(bi)] = acc;
    }
  } else {
#pragma omp parallel for schedule(dynamic) if (par)
    for (long bi = 0; bi < static_cast<long>(nb); ++bi) {
      const std::size_t j0 = static_cast<std::size_t>(bi) * kRowBlock;
      const std::size_t j1 = j0 + kRowBlock < n ? j0 + kRowBlock : n;
      double acc = 0.0;
      for (std::size_t j = j0; j < j1; ++j) {
        const double* xj = x + j * d;
        for (std::size_t k = 0; k < m; ++k) acc += f(xj, y + k * d, d);
      }
      partial[static_cast<std::size_t>(bi)] = acc;
    }
  }
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

// ((m+n)/(mn)) * T for an arbitrary symmetric pair kernel; the statistic and
// its discrepancy estimate are thin wrappers over this.
template <class PairFn>
double vstat_quadform(const Sample& x, const Sample& y, PairFn f) {
  if (x.dim() != y.dim()) {
    throw DimensionError("statistic requires samples of equal dimension");
  }
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  const std::size_t d = x.dim();
  const double sxx = sum_within(x.data().data(), n, d, f);
  const double syy = sum_within(y.data().data(), m, d, f);
  const double sxy = sum_cross(x.data().data(), n, y.data().data(), m, d, f);
  const double u = sxx / (static_cast<double>(n) * static_cast<double>(n));
  const double v = syy / (static_cast<double>(m) * static_cast<double>(m));
  const double w = 2.0 * sxy / (static_cast<double>(n) * static_cast<double>(m));
  return (u + v) - w;
}

}  // namespace detail

}  // namespace sphgof
