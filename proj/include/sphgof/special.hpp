#pragma once

#include <cstddef>

namespace sphgof {

// log I_nu(x) for nu >= 0, x >= 0, accurate to ~1e-13 relative across the
// whole range (power series with overflow renormalization; Hankel asymptotic
// expansion for large x with small order).
double log_bessel_i(double nu, double x);

// Ratio I_nu(x) / I_{nu-1}(x) in [0, 1) for nu >= 1/2, x >= 0.  Evaluated by
// the Perron continued fraction (modified Lentz), with the closed form
// coth(x) - 1/x special-cased at nu = 3/2 and an asymptotic-ratio path for
// very large x.  This equals the mean resultant length A_d at nu = d/2.
double bessel_i_ratio(double nu, double x);

// Mean resultant length A_d(kappa) = I_{d/2}(kappa) / I_{d/2-1}(kappa).
double mean_resultant_length(std::size_t d, double kappa);

// d/dkappa of A_d via the identity A' = 1 - A^2 - (d-1)/kappa * A.
double mean_resultant_length_derivative(std::size_t d, double kappa, double a);

// Log normalizer of the rotationally symmetric exp(kappa * t) family on
// S^{d-1} w.r.t. surface measure: density = exp(vmf_log_normalizer + kappa*t).
double vmf_log_normalizer(std::size_t d, double kappa);

// Log of the Kent (FB5) normalizing constant on S^2 w.r.t. surface measure:
// c(kappa, beta) = 2 pi sum_j [G(j+1/2)/G(j+1)] beta^{2j} (kappa/2)^{-2j-1/2}
//                  I_{2j+1/2}(kappa),
// summed until terms fall below 1e-14 relative.  Valid for any beta >= 0.
double kent_log_normalizer(double kappa, double beta);

// log(exp(a) + exp(b)) without overflow.
double log_add_exp(double a, double b);

}  // namespace sphgof
