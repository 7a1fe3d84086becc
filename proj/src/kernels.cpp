#include "sphgof/kernels.hpp"

#include <cmath>
#include <cstdio>

#include "sphgof/errors.hpp"

namespace sphgof {

namespace {

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

KernelSpec KernelSpec::stable(double gamma, double xi) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidSpecError("stable kernel requires gamma > 0");
  }
  if (!(xi > 0.0 && xi <= 2.0)) {
    throw InvalidSpecError("stable kernel requires xi in (0, 2]");
  }
  return KernelSpec(StableKernel{gamma, xi});
}

KernelSpec KernelSpec::energy(double a) {
  if (!(a > 0.0 && a < 2.0)) {
    throw InvalidSpecError("energy kernel requires a in (0, 2)");
  }
  return KernelSpec(EnergyKernel{a});
}

double KernelSpec::at_sqdist(double s) const {
  if (s < 0.0) s = 0.0;
  if (const auto* st = std::get_if<StableKernel>(&k_)) {
    if (st->xi == 2.0) return std::exp(-st->gamma * s);
    if (st->xi == 1.0) return std::exp(-st->gamma * std::sqrt(s));
    return std::exp(-st->gamma * std::pow(s, 0.5 * st->xi));
  }
  const auto& en = std::get<EnergyKernel>(k_);
  if (en.a == 1.0) return -std::sqrt(s);
  return -std::pow(s, 0.5 * en.a);
}

double KernelSpec::eval(const UnitVector& x, const UnitVector& y) const {
  if (x.dim() != y.dim()) throw DimensionError("kernel_eval: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double diff = x[i] - y[i];
    s += diff * diff;
  }
  return at_sqdist(s);
}

std::string KernelSpec::label() const {
  if (const auto* st = std::get_if<StableKernel>(&k_)) {
    return "stable(gamma=" + fmt_num(st->gamma) + ",xi=" + fmt_num(st->xi) + ")";
  }
  return "energy(a=" + fmt_num(std::get<EnergyKernel>(k_).a) + ")";
}

double kernel_eval(const KernelSpec& kernel, const UnitVector& x,
                   const UnitVector& y) {
  return kernel.eval(x, y);
}

}  // namespace sphgof
