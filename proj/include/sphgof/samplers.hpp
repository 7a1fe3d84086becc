#pragma once

#include <cstddef>

#include "sphgof/distributions.hpp"
#include "sphgof/geometry.hpp"
#include "sphgof/rng.hpp"

namespace sphgof {

// Draws n i.i.d. points from the given law.  The (seed, stream_id) pair fully
// determines the result: repeated calls reproduce the same sample bit for bit,
// independent of thread schedule.
//
// Algorithms: uniform via normalized Gaussians; von Mises-Fisher via the
// Ulrich/Wood rejection scheme for the cosine against the mean direction
// (Wood 1994, CACM 23) with a uniform tangent, valid for every d >= 2 and
// exact-uniform at kappa = 0; mixtures pick the component first; ACG as a
// normalized Gaussian with covariance sigma; Kent (d = 3) by rejection from
// an angular central Gaussian envelope through a Bingham bound
// (Kent, Ganeiber & Mardia 2018).
Sample sample(const DistributionSpec& spec, std::size_t n, SeedStream seed);

}  // namespace sphgof
