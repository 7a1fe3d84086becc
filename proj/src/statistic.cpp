#include "sphgof/statistic.hpp"

#include <cmath>

namespace sphgof {

namespace {

// Specialized pair kernels over unit-vector rows.  The squared distance is
// accumulated from explicit coordinate differences: near-coincident rows then
// keep full relative accuracy (the subtractions are exact), which matters for
// exponents below 2 where the kernel has unbounded slope at zero.  The
// algebraic shortcut 2 - 2 x'y loses every significant digit there.
inline double sqdist_rows(const double* a, const double* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

struct StableXi2Fn {
  double gamma;
  double operator()(const double* a, const double* b, std::size_t d) const {
    return std::exp(-gamma * sqdist_rows(a, b, d));
  }
};

struct StableXi1Fn {
  double gamma;
  double operator()(const double* a, const double* b, std::size_t d) const {
    return std::exp(-gamma * std::sqrt(sqdist_rows(a, b, d)));
  }
};

struct StableGenFn {
  double gamma;
  double half_xi;
  double operator()(const double* a, const double* b, std::size_t d) const {
    return std::exp(-gamma * std::pow(sqdist_rows(a, b, d), half_xi));
  }
};

struct EnergyA1Fn {
  double operator()(const double* a, const double* b, std::size_t d) const {
    return -std::sqrt(sqdist_rows(a, b, d));
  }
};

struct EnergyGenFn {
  double half_a;
  double operator()(const double* a, const double* b, std::size_t d) const {
    return -std::pow(sqdist_rows(a, b, d), half_a);
  }
};

template <class Fn>
double dispatch_quadform(const Sample& x, const Sample& y, Fn f) {
  return detail::vstat_quadform(x, y, f);
}

double quadform_for(const Sample& x, const Sample& y, const KernelSpec& kernel) {
  if (kernel.is_stable()) {
    const auto& st = kernel.as_stable();
    if (st.xi == 2.0) return dispatch_quadform(x, y, StableXi2Fn{st.gamma});
    if (st.xi == 1.0) return dispatch_quadform(x, y, StableXi1Fn{st.gamma});
    return dispatch_quadform(x, y, StableGenFn{st.gamma, 0.5 * st.xi});
  }
  const auto& en = kernel.as_energy();
  if (en.a == 1.0) return dispatch_quadform(x, y, EnergyA1Fn{});
  return dispatch_quadform(x, y, EnergyGenFn{0.5 * en.a});
}

}  // namespace

StatisticValue compute_statistic(const Sample& x, const Sample& y,
                                 const KernelSpec& kernel) {
  const double quad = quadform_for(x, y, kernel);
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  const double t = quad * (n * m / (n + m));
  if (!(t >= -1e-9)) {
    throw NumericalError("statistic fell below the -1e-9 nonnegativity floor");
  }
  return StatisticValue{t, x.size(), y.size(), kernel};
}

double delta_hat(const Sample& x, const Sample& y, const KernelSpec& kernel) {
  return quadform_for(x, y, kernel);
}

std::optional<GramMatrix> GramMatrix::build(const Sample& pooled,
                                            const KernelSpec& kernel,
                                            std::size_t cap_bytes) {
  const std::size_t n = pooled.size();
  if (n > cap_bytes / sizeof(double) / n) return std::nullopt;
  const std::size_t d = pooled.dim();
  const double* rows = pooled.data().data();
  std::vector<double> g(n * n);
  const bool par = n >= 256 && !detail::in_parallel_region();
#pragma omp parallel for schedule(dynamic) if (par)
  for (long p = 0; p < static_cast<long>(n); ++p) {
    const std::size_t up = static_cast<std::size_t>(p);
    const double* xp = rows + up * d;
    for (std::size_t q = up; q < n; ++q) {
      const double* xq = rows + q * d;
      const double v = kernel.at_sqdist(sqdist_rows(xp, xq, d));
      g[up * n + q] = v;
      g[q * n + up] = v;
    }
  }
  return GramMatrix(n, std::move(g));
}

double GramMatrix::quadform(std::span<const double> w) const {
  if (w.size() != n_) {
    throw DimensionError("quadform weight length does not match Gram size");
  }
  double diag = 0.0;
  double off = 0.0;
  for (std::size_t p = 0; p < n_; ++p) {
    const double wp = w[p];
    if (wp == 0.0) continue;
    const double* row = g_.data() + p * n_;
    diag += wp * wp * row[p];
    double acc = 0.0;
    for (std::size_t q = p + 1; q < n_; ++q) acc += w[q] * row[q];
    off += wp * acc;
  }
  return 2.0 * off + diag;
}

}  // namespace sphgof
