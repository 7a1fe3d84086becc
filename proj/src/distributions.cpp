#include "sphgof/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <utility>

#include "sphgof/errors.hpp"
#include "sphgof/special.hpp"

namespace sphgof {

namespace {

double dot_span(std::span<const double> x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += x[i] * y[i];
  return s;
}

void check_axes_orthonormal(const Eigen::Matrix3d& axes) {
  const Eigen::Matrix3d g = axes.transpose() * axes;
  if ((g - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-10) {
    throw InvalidSpecError("Kent axes are not orthonormal to 1e-10");
  }
}

DistributionSpec make_kent_impl(double kappa, double beta,
                                const Eigen::Matrix3d& axes, bool enforce_unimodal) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw InvalidSpecError("Kent kappa must be positive and finite");
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw InvalidSpecError("Kent beta must be nonnegative and finite");
  }
  if (enforce_unimodal && !(2.0 * beta < kappa)) {
    throw InvalidSpecError("Kent requires 0 <= 2*beta < kappa (unimodal regime)");
  }
  check_axes_orthonormal(axes);
  return KentSpec{kappa, beta, axes};
}

}  // namespace

DistributionSpec make_uniform(std::size_t d) {
  if (d < 2) throw InvalidSpecError("uniform law requires d >= 2");
  return UniformSpec{d};
}

DistributionSpec make_vmf(UnitVector theta, double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw InvalidSpecError("vMF kappa must be finite and >= 0");
  }
  return VmfSpec{std::move(theta), kappa};
}

DistributionSpec make_vmf_mixture(std::vector<double> weights,
                                  std::vector<VmfSpec> components) {
  if (weights.empty() || weights.size() != components.size()) {
    throw InvalidSpecError("mixture needs matching, nonempty weights/components");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw InvalidSpecError("mixture weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvalidSpecError("mixture weights must sum to 1 within 1e-12");
  }
  const std::size_t d = components.front().theta.dim();
  for (const auto& c : components) {
    if (c.theta.dim() != d) {
      throw InvalidSpecError("mixture components must share one dimension");
    }
    if (!(c.kappa >= 0.0) || !std::isfinite(c.kappa)) {
      throw InvalidSpecError("mixture component kappa must be finite and >= 0");
    }
  }
  return VmfMixtureSpec{std::move(weights), std::move(components)};
}

DistributionSpec make_acg(Eigen::MatrixXd sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() < 2) {
    throw InvalidSpecError("ACG sigma must be square with d >= 2");
  }
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw InvalidSpecError("ACG sigma must be symmetric to 1e-10");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0) {
    throw InvalidSpecError("ACG sigma must be positive definite");
  }
  return AcgSpec{std::move(sigma)};
}

DistributionSpec make_kent(double kappa, double beta, const Eigen::Matrix3d& axes) {
  return make_kent_impl(kappa, beta, axes, /*enforce_unimodal=*/true);
}

DistributionSpec make_kent_relaxed(double kappa, double beta,
                                   const Eigen::Matrix3d& axes) {
  return make_kent_impl(kappa, beta, axes, /*enforce_unimodal=*/false);
}

std::size_t dimension(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::size_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, UniformSpec>) {
          return s.d;
        } else if constexpr (std::is_same_v<T, VmfSpec>) {
          return s.theta.dim();
        } else if constexpr (std::is_same_v<T, VmfMixtureSpec>) {
          return s.components.front().theta.dim();
        } else if constexpr (std::is_same_v<T, AcgSpec>) {
          return static_cast<std::size_t>(s.sigma.rows());
        } else {
          return 3;
        }
      },
      spec);
}

std::string family_name(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, UniformSpec>) {
          return "uniform";
        } else if constexpr (std::is_same_v<T, VmfSpec>) {
          return "vmf";
        } else if constexpr (std::is_same_v<T, VmfMixtureSpec>) {
          return "vmf-mixture";
        } else if constexpr (std::is_same_v<T, AcgSpec>) {
          return "acg";
        } else {
          return "kent";
        }
      },
      spec);
}

double log_density(const DistributionSpec& spec, std::span<const double> x) {
  const std::size_t d = dimension(spec);
  if (x.size() != d) {
    throw DimensionError("log_density: point dimension does not match spec");
  }
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, UniformSpec>) {
          return -std::log(surface_area(s.d));
        } else if constexpr (std::is_same_v<T, VmfSpec>) {
          return vmf_log_normalizer(d, s.kappa) +
                 s.kappa * dot_span(x, s.theta.coords());
        } else if constexpr (std::is_same_v<T, VmfMixtureSpec>) {
          double acc = -std::numeric_limits<double>::infinity();
          for (std::size_t i = 0; i < s.weights.size(); ++i) {
            const auto& c = s.components[i];
            const double lc = vmf_log_normalizer(d, c.kappa) +
                              c.kappa * dot_span(x, c.theta.coords());
            acc = log_add_exp(acc, std::log(s.weights[i]) + lc);
          }
          return acc;
        } else if constexpr (std::is_same_v<T, AcgSpec>) {
          Eigen::VectorXd v(static_cast<Eigen::Index>(d));
          for (std::size_t i = 0; i < d; ++i) v[static_cast<Eigen::Index>(i)] = x[i];
          Eigen::LLT<Eigen::MatrixXd> llt(s.sigma);
          if (llt.info() != Eigen::Success) {
            throw NumericalError("ACG sigma Cholesky failed in log_density");
          }
          const double quad = v.dot(llt.solve(v));
          double half_logdet = 0.0;
          const auto& l = llt.matrixL();
          for (std::size_t i = 0; i < d; ++i) {
            half_logdet += std::log(l(static_cast<Eigen::Index>(i),
                                      static_cast<Eigen::Index>(i)));
          }
          const double dd = static_cast<double>(d);
          return -half_logdet - 0.5 * dd * std::log(quad) -
                 std::log(surface_area(d));
        } else {
          Eigen::Vector3d v(x[0], x[1], x[2]);
          const double t1 = s.axes.col(0).dot(v);
          const double t2 = s.axes.col(1).dot(v);
          const double t3 = s.axes.col(2).dot(v);
          return s.kappa * t1 + s.beta * (t2 * t2 - t3 * t3) -
                 kent_log_normalizer(s.kappa, s.beta);
        }
      },
      spec);
}

double density(const DistributionSpec& spec, const UnitVector& x) {
  return std::exp(log_density(spec, std::span<const double>(x.coords())));
}

}  // namespace sphgof
