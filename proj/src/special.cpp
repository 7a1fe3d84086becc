#include "sphgof/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sphgof/errors.hpp"

namespace sphgof {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Bracket of the Hankel large-argument expansion:
// I_nu(x) ~ e^x / sqrt(2 pi x) * S, S = 1 - (mu-1)/(8x) + ...
// Valid when x is large relative to nu^2.
double hankel_bracket(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double s = 1.0;
  for (int k = 1; k <= 40; ++k) {
    const double num = mu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
    term *= -num / (8.0 * k * x);
    s += term;
    if (std::abs(term) < 1e-17 * std::abs(s)) break;
  }
  return s;
}

bool hankel_applies(double nu, double x) { return x > 1000.0 && nu * nu < 0.1 * x; }

// Power-series bracket S with I_nu(x) = (x/2)^nu / Gamma(nu+1) * S; the
// running sum is renormalized to dodge overflow, so any x is in range.
// Returns log(S).
double log_series_bracket(double nu, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  double scale_log = 0.0;
  for (std::size_t k = 0; k < 4000000; ++k) {
    term *= q / ((static_cast<double>(k) + 1.0) * (nu + static_cast<double>(k) + 1.0));
    sum += term;
    if (sum > 1e280) {
      sum *= 1e-280;
      term *= 1e-280;
      scale_log += 280.0 * std::numbers::ln10;
    }
    if (term < sum * 1e-17) break;
  }
  return std::log(sum) + scale_log;
}

}  // namespace

double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = a > b ? a : b;
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

double log_bessel_i(double nu, double x) {
  if (!(nu >= 0.0) || !(x >= 0.0)) {
    throw OutOfRangeError("log_bessel_i requires nu >= 0 and x >= 0");
  }
  if (x == 0.0) return nu == 0.0 ? 0.0 : -kInf;
  if (hankel_applies(nu, x)) {
    return x - 0.5 * std::log(2.0 * std::numbers::pi * x) +
           std::log(hankel_bracket(nu, x));
  }
  return nu * std::log(0.5 * x) - std::lgamma(nu + 1.0) + log_series_bracket(nu, x);
}

double bessel_i_ratio(double nu, double x) {
  if (!(nu >= 0.5)) throw OutOfRangeError("bessel_i_ratio requires nu >= 1/2");
  if (!(x >= 0.0)) throw OutOfRangeError("bessel_i_ratio requires x >= 0");
  if (x == 0.0) return 0.0;

  if (nu == 1.5) {
    // coth(x) - 1/x, with the Laurent series below x = 1e-2 to avoid the
    // cancellation between coth and 1/x.
    if (x < 1e-2) {
      const double x2 = x * x;
      return x / 3.0 - x * x2 / 45.0 + 2.0 * x2 * x2 * x / 945.0;
    }
    return 1.0 / std::tanh(x) - 1.0 / x;
  }

  if (hankel_applies(nu, x) && hankel_applies(nu - 1.0, x)) {
    return hankel_bracket(nu, x) / hankel_bracket(nu - 1.0, x);
  }

  // Perron continued fraction r = x / (2 nu + x^2 / (2(nu+1) + ...)),
  // evaluated by the modified Lentz algorithm (Numerical Recipes style).
  const double tiny = 1e-300;
  double f = tiny;
  double c = f;
  double d = 0.0;
  for (int k = 1; k <= 100000; ++k) {
    const double a = (k == 1) ? x : x * x;
    const double b = 2.0 * (nu + static_cast<double>(k) - 1.0);
    d = b + a * d;
    if (d == 0.0) d = tiny;
    c = b + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return f;
}

double mean_resultant_length(std::size_t d, double kappa) {
  if (d < 2) throw DimensionError("mean_resultant_length requires d >= 2");
  return bessel_i_ratio(0.5 * static_cast<double>(d), kappa);
}

double mean_resultant_length_derivative(std::size_t d, double kappa, double a) {
  return 1.0 - a * a - (static_cast<double>(d) - 1.0) / kappa * a;
}

double vmf_log_normalizer(std::size_t d, double kappa) {
  if (d < 2) throw DimensionError("vmf_log_normalizer requires d >= 2");
  if (!(kappa >= 0.0)) throw OutOfRangeError("vmf_log_normalizer requires kappa >= 0");
  const double half_d = 0.5 * static_cast<double>(d);
  const double log_omega = std::numbers::ln2 + half_d * std::log(std::numbers::pi) -
                           std::lgamma(half_d);
  if (kappa == 0.0) return -log_omega;
  const double nu = half_d - 1.0;
  if (kappa < 500.0) {
    // With Gamma(nu+1) = Gamma(d/2) the constant collapses to
    // 1 / (omega_d * S(kappa)) where S is the series bracket; this avoids the
    // cancellation of nu*log(kappa/2) against log I at small kappa.
    return -(log_omega + log_series_bracket(nu, kappa));
  }
  return nu * std::log(0.5 * kappa) - std::lgamma(half_d) -
         log_bessel_i(nu, kappa) - log_omega;
}

double kent_log_normalizer(double kappa, double beta) {
  if (!(kappa > 0.0)) throw OutOfRangeError("kent_log_normalizer requires kappa > 0");
  if (!(beta >= 0.0)) throw OutOfRangeError("kent_log_normalizer requires beta >= 0");
  const double log_half_kappa = std::log(0.5 * kappa);
  double log_sum = -kInf;
  for (std::size_t j = 0; j < 100000; ++j) {
    const double dj = static_cast<double>(j);
    double lt = std::lgamma(dj + 0.5) - std::lgamma(dj + 1.0) -
                (2.0 * dj + 0.5) * log_half_kappa +
                log_bessel_i(2.0 * dj + 0.5, kappa);
    if (j > 0) {
      if (beta == 0.0) break;
      lt += 2.0 * dj * std::log(beta);
    }
    log_sum = log_add_exp(log_sum, lt);
    // Terms can first rise when beta is large; only trust the relative
    // cutoff once past that regime.
    if (2.0 * dj > beta && lt < log_sum + std::log(1e-16)) break;
  }
  return std::log(2.0 * std::numbers::pi) + log_sum;
}

}  // namespace sphgof
