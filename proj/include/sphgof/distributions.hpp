#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sphgof/geometry.hpp"

namespace sphgof {

// The five sampling families.  Instances are immutable; build them through
// the make_* factories below, which validate all parameter constraints.

struct UniformSpec {
  std::size_t d = 3;
};

struct VmfSpec {
  UnitVector theta;  // mean direction
  double kappa;      // concentration >= 0; kappa = 0 is the uniform law
};

struct VmfMixtureSpec {
  std::vector<double> weights;      // positive, sum to 1 (tolerance 1e-12)
  std::vector<VmfSpec> components;  // same dimension throughout
};

struct AcgSpec {
  Eigen::MatrixXd sigma;  // symmetric positive definite, d x d
};

struct KentSpec {
  double kappa;           // > 0
  double beta;            // >= 0; ovalness
  Eigen::Matrix3d axes;   // orthonormal columns: mean, major, minor axis
  bool unimodal() const { return 2.0 * beta < kappa; }
};

using DistributionSpec =
    std::variant<UniformSpec, VmfSpec, VmfMixtureSpec, AcgSpec, KentSpec>;

DistributionSpec make_uniform(std::size_t d);
DistributionSpec make_vmf(UnitVector theta, double kappa);
DistributionSpec make_vmf_mixture(std::vector<double> weights,
                                  std::vector<VmfSpec> components);
DistributionSpec make_acg(Eigen::MatrixXd sigma);

// Enforces the unimodal regime 0 <= 2 beta < kappa.
DistributionSpec make_kent(double kappa, double beta, const Eigen::Matrix3d& axes);

// Permits any beta >= 0, including the overdispersed regime 2 beta >= kappa;
// used when reporting unconstrained fits (sampling remains valid there).
DistributionSpec make_kent_relaxed(double kappa, double beta,
                                   const Eigen::Matrix3d& axes);

std::size_t dimension(const DistributionSpec& spec);
std::string family_name(const DistributionSpec& spec);

// Density w.r.t. surface measure on S^{d-1}; every family integrates to 1
// over the sphere (Uniform gives 1 / surface_area(d)).
double log_density(const DistributionSpec& spec, std::span<const double> x);
double density(const DistributionSpec& spec, const UnitVector& x);

}  // namespace sphgof
