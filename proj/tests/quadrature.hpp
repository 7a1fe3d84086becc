#pragma once

// Test-only quadrature helpers: Gauss-Legendre nodes on [-1, 1] (Newton on
// the Legendre recurrence) and surface integrals over S^1 / S^2 built from
// them, used to validate densities and sampler moments independently of the
// library's own normalizing constants.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace testq {

struct GaussLegendre {
  std::vector<double> node;
  std::vector<double> weight;
};

inline GaussLegendre gauss_legendre(std::size_t n) {
  GaussLegendre out;
  out.node.resize(n);
  out.weight.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Chebyshev-based initial guess, then Newton.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * static_cast<double>(j) + 1.0) * x * p1 -
              static_cast<double>(j) * p2) /
             (static_cast<double>(j) + 1.0);
      }
      pp = static_cast<double>(n) * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    out.node[i] = -x;
    out.node[n - 1 - i] = x;
    out.weight[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    out.weight[n - 1 - i] = out.weight[i];
  }
  return out;
}

// Integral of f over S^2 embedded in R^3: u = x1 in [-1,1] (Gauss-Legendre),
// azimuth phi (trapezoid, spectrally accurate for periodic integrands),
// point = (u, sqrt(1-u^2) cos phi, sqrt(1-u^2) sin phi).
inline double integrate_sphere3(
    const std::function<double(const std::vector<double>&)>& f,
    std::size_t n_u = 96, std::size_t n_phi = 256) {
  const GaussLegendre gl = gauss_legendre(n_u);
  double total = 0.0;
  const double dphi = 2.0 * std::numbers::pi / static_cast<double>(n_phi);
  std::vector<double> pt(3);
  for (std::size_t i = 0; i < n_u; ++i) {
    const double u = gl.node[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
    double ring = 0.0;
    for (std::size_t k = 0; k < n_phi; ++k) {
      const double phi = dphi * static_cast<double>(k);
      pt[0] = u;
      pt[1] = s * std::cos(phi);
      pt[2] = s * std::sin(phi);
      ring += f(pt);
    }
    total += gl.weight[i] * ring * dphi;
  }
  return total;
}

// Integral of f over the unit circle S^1 in R^2 (trapezoid rule).
inline double integrate_circle(
    const std::function<double(const std::vector<double>&)>& f,
    std::size_t n_phi = 4096) {
  double total = 0.0;
  const double dphi = 2.0 * std::numbers::pi / static_cast<double>(n_phi);
  std::vector<double> pt(2);
  for (std::size_t k = 0; k < n_phi; ++k) {
    const double phi = dphi * static_cast<double>(k);
    pt[0] = std::cos(phi);
    pt[1] = std::sin(phi);
    total += f(pt);
  }
  return total * dphi;
}

}  // namespace testq
