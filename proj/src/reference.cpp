#include "sphgof/reference.hpp"

#include <cmath>
#include <cstddef>
#include <span>

namespace sphgof::reference {

namespace {

// C(u - v) evaluated from the definition: form the difference vector, take
// its Euclidean norm, apply the kernel formula. Deliberately avoids the
// squared-distance shortcut used by the optimized path.
double kernel_at_difference(const KernelSpec& kernel,
                            std::span<const double> u,
                            std::span<const double> v) {
  double sq = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double diff = u[i] - v[i];
    sq += diff * diff;
  }
  const double norm = std::sqrt(sq);
  if (kernel.is_stable()) {
    const StableKernel& k = kernel.as_stable();
    return std::exp(-k.gamma * std::pow(norm, k.xi));
  }
  const EnergyKernel& k = kernel.as_energy();
  return -std::pow(norm, k.a);
}

// Neumaier compensated accumulator.  The reference serves as a numerical
// oracle, so its own summation rounding must stay far below the tolerances
// it is compared at; plain accumulation over an n*m grid loses ~grid_size
// ulps of the running sum, which is the same order as the deviations under
// test once the three grid means nearly cancel.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

// Mean of C(a_j - b_k) over the full j,k grid, diagonal terms included.
double mean_kernel_grid(const Sample& a, const Sample& b,
                        const KernelSpec& kernel) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  CompensatedSum total;
  for (std::size_t j = 0; j < na; ++j) {
    for (std::size_t k = 0; k < nb; ++k) {
      total.add(kernel_at_difference(kernel, a.row(j), b.row(k)));
    }
  }
  return total.value() / (static_cast<double>(na) * static_cast<double>(nb));
}

}  // namespace

double delta_hat(const Sample& x, const Sample& y, const KernelSpec& kernel) {
  if (x.dim() != y.dim()) {
    throw DimensionError("reference statistic: samples have dimensions " +
                         std::to_string(x.dim()) + " and " +
                         std::to_string(y.dim()));
  }
  const double within_x = mean_kernel_grid(x, x, kernel);
  const double cross = mean_kernel_grid(x, y, kernel);
  const double within_y = mean_kernel_grid(y, y, kernel);
  return within_x - 2.0 * cross + within_y;
}

double compute_statistic(const Sample& x, const Sample& y,
                         const KernelSpec& kernel) {
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  return delta_hat(x, y, kernel) * (n * m / (n + m));
}

}  // namespace sphgof::reference
