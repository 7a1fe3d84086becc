#pragma once

#include "sphgof/geometry.hpp"
#include "sphgof/kernels.hpp"

namespace sphgof::reference {

// Plain serial transcription of the statistic: materializes every pairwise
// difference and applies C to its norm, with no Gram caching, no dot-product
// shortcut, and no parallelism.  Kept as the ground-truth baseline for
// equivalence tests and as the comparison arm of the benchmark target.
double compute_statistic(const Sample& x, const Sample& y,
                         const KernelSpec& kernel);

double delta_hat(const Sample& x, const Sample& y, const KernelSpec& kernel);

}  // namespace sphgof::reference
