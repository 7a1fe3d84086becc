#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "sphgof/distributions.hpp"

namespace sphgof {

struct FitResult {
  DistributionSpec spec;
  double log_likelihood = 0.0;  // total over observations at the fitted value
  std::size_t iterations = 0;
  bool converged = false;
  double tolerance_achieved = 0.0;
};

// Maximum-likelihood fit of a von Mises-Fisher law.  The mean direction is
// x_bar / ||x_bar||; the concentration solves A_d(kappa) = ||x_bar|| by
// bracketing plus safeguarded Newton.  Throws DegenerateMeanError when the
// resultant length is numerically zero; a resultant length at the upper
// saturation point yields the capped concentration 1e6 with converged=false.
FitResult fit_vmf(const Sample& x);

// Tyler-style fixed-point fit of the angular central Gaussian shape matrix
// (trace-normalized to d).  Throws RankDeficientError when the data do not
// span R^d.
FitResult fit_acg(const Sample& x);

// Moment axes plus likelihood maximization in (kappa, beta) for the Kent
// (Fisher-Bingham FB5) law on S^2.  Requires dim == 3 and at least 4
// observations.  The ovalness is not constrained to the unimodal region;
// inspect KentSpec::unimodal() on the result.
FitResult fit_kent(const Sample& x);

enum class FitFamily { vmf, acg, kent };

std::string_view to_string(FitFamily family);
FitFamily parse_fit_family(std::string_view name);

// Dispatches to the matching fit_* routine.
FitResult fit(FitFamily family, const Sample& x);

}  // namespace sphgof
