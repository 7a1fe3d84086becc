#pragma once

#include <string>
#include <variant>

#include "sphgof/geometry.hpp"

namespace sphgof {

// C(x) = exp(-gamma * ||x||^xi); positive definite for xi in (0, 2].
struct StableKernel {
  double gamma;  // > 0
  double xi;     // in (0, 2]
};

// C(x) = -||x||^a for a in (0, 2); the spatial-sign energy kernel, negative
// pointwise yet yielding a nonnegative two-sample statistic.
struct EnergyKernel {
  double a;
};

class KernelSpec {
 public:
  // Value-initialization convenience only (gamma=1, xi=2); operations that
  // need a kernel always take one explicitly.
  KernelSpec() : k_(StableKernel{1.0, 2.0}) {}

  static KernelSpec stable(double gamma, double xi);
  static KernelSpec energy(double a);

  // C evaluated at squared distance s = ||x - y||^2 >= 0.
  double at_sqdist(double s) const;

  // C(x - y) from explicit coordinates (forms the difference vector).
  double eval(const UnitVector& x, const UnitVector& y) const;

  bool is_stable() const { return std::holds_alternative<StableKernel>(k_); }
  const StableKernel& as_stable() const { return std::get<StableKernel>(k_); }
  const EnergyKernel& as_energy() const { return std::get<EnergyKernel>(k_); }

  // Deterministic short label for reports, e.g. "stable(gamma=1,xi=2)".
  std::string label() const;

 private:
  explicit KernelSpec(std::variant<StableKernel, EnergyKernel> k) : k_(k) {}
  std::variant<StableKernel, EnergyKernel> k_;
};

// C(x - y); equivalent to KernelSpec::eval.
double kernel_eval(const KernelSpec& kernel, const UnitVector& x,
                   const UnitVector& y);

}  // namespace sphgof
