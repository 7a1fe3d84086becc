#include "sphgof/estimators.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "sphgof/errors.hpp"
#include "sphgof/special.hpp"

namespace sphgof {

namespace {

Eigen::VectorXd sample_mean(const Sample& x) {
  const std::size_t d = x.dim();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < x.size(); ++j) {
    mean += Eigen::Map<const Eigen::VectorXd>(x.row(j).data(),
                                              static_cast<Eigen::Index>(d));
  }
  mean /= static_cast<double>(x.size());
  return mean;
}

Eigen::MatrixXd scatter_matrix(const Sample& x) {
  const auto d = static_cast<Eigen::Index>(x.dim());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t j = 0; j < x.size(); ++j) {
    Eigen::Map<const Eigen::VectorXd> row(x.row(j).data(), d);
    s.selfadjointView<Eigen::Lower>().rankUpdate(row);
  }
  s = s.selfadjointView<Eigen::Lower>();
  s /= static_cast<double>(x.size());
  return s;
}

// Maximizes a unimodal function on [lo, hi] by golden-section search.
template <class F>
double golden_max(F&& f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

constexpr double kVmfConcentrationCap = 1e6;
constexpr double kKentKappaMin = 1e-6;
constexpr double kKentKappaMax = 2e3;
constexpr double kKentBetaMax = 1e3;

}  // namespace

FitResult fit_vmf(const Sample& x) {
  const std::size_t d = x.dim();
  const std::size_t n = x.size();
  if (n < 2) {
    throw OutOfRangeError("vmf fit requires at least 2 observations; got " +
                          std::to_string(n));
  }
  const Eigen::VectorXd mean = sample_mean(x);
  const double rbar = mean.norm();
  if (rbar < 1e-12) {
    throw DegenerateMeanError(
        "vmf fit: resultant length " + std::to_string(rbar) +
        " leaves the mean direction undefined");
  }
  std::vector<double> theta(d);
  for (std::size_t i = 0; i < d; ++i) {
    theta[i] = mean(static_cast<Eigen::Index>(i)) / rbar;
  }
  const UnitVector direction = normalize(theta);

  FitResult result;
  if (rbar > 1.0 - 1e-9) {
    // The resultant length sits at the resolution limit of A_d; report the
    // capped concentration rather than chasing an unbounded root.
    const double kappa = kVmfConcentrationCap;
    result.spec = make_vmf(direction, kappa);
    result.converged = false;
    result.iterations = 0;
    result.tolerance_achieved =
        std::abs(mean_resultant_length(d, kappa) - rbar);
    result.log_likelihood =
        static_cast<double>(n) * (vmf_log_normalizer(d, kappa) + kappa * rbar);
    return result;
  }

  // Bracket the root of A_d(kappa) = rbar, then polish with Newton steps
  // safeguarded by bisection.  A_d is strictly increasing.
  const double kappa0 = rbar * (static_cast<double>(d) - rbar * rbar) /
                        (1.0 - rbar * rbar);
  double lo = 0.0;
  double hi = std::max(1.0, kappa0);
  std::size_t iters = 0;
  while (mean_resultant_length(d, hi) < rbar && hi < 1e12) {
    lo = hi;
    hi *= 2.0;
    ++iters;
  }
  while (hi - lo > 1.0) {
    const double mid = 0.5 * (lo + hi);
    if (mean_resultant_length(d, mid) < rbar) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++iters;
  }

  double kappa = (kappa0 > lo && kappa0 < hi) ? kappa0 : 0.5 * (lo + hi);
  double resid = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (std::size_t step = 0; step < 200; ++step) {
    const double a = mean_resultant_length(d, kappa);
    resid = a - rbar;
    ++iters;
    if (std::abs(resid) <= 1e-10) {
      converged = true;
      break;
    }
    if (resid > 0.0) {
      hi = kappa;
    } else {
      lo = kappa;
    }
    const double deriv = mean_resultant_length_derivative(d, kappa, a);
    double next = kappa - resid / deriv;
    if (!std::isfinite(next) || next <= lo || next >= hi) {
      next = 0.5 * (lo + hi);
    }
    if (next == kappa || hi - lo <= kappa * 4e-16) {
      break;
    }
    kappa = next;
  }

  result.spec = make_vmf(direction, kappa);
  result.iterations = iters;
  result.converged = converged;
  result.tolerance_achieved = std::abs(resid);
  result.log_likelihood =
      static_cast<double>(n) * (vmf_log_normalizer(d, kappa) + kappa * rbar);
  return result;
}

FitResult fit_acg(const Sample& x) {
  const auto d = static_cast<Eigen::Index>(x.dim());
  const std::size_t n = x.size();
  if (n < x.dim()) {
    throw RankDeficientError(
        "acg fit: " + std::to_string(n) + " observations cannot span R^" +
        std::to_string(x.dim()));
  }
  Eigen::MatrixXd data(static_cast<Eigen::Index>(n), d);
  for (std::size_t j = 0; j < n; ++j) {
    data.row(static_cast<Eigen::Index>(j)) =
        Eigen::Map<const Eigen::VectorXd>(x.row(j).data(), d);
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(data);
  const auto& sv = svd.singularValues();
  if (!(sv(0) > 0.0) || sv(d - 1) <= sv(0) * 1e-10) {
    throw RankDeficientError(
        "acg fit: data matrix is numerically rank-deficient (smallest "
        "singular value " +
        std::to_string(sv(d - 1)) + ")");
  }

  // Tyler fixed-point iteration for the shape matrix, trace-normalized to d.
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(d, d);
  double diff = std::numeric_limits<double>::infinity();
  bool converged = false;
  std::size_t iter = 0;
  constexpr std::size_t kMaxIter = 1000;
  for (; iter < kMaxIter; ++iter) {
    const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) {
      throw NumericalError("acg fit: shape iterate lost positive definiteness");
    }
    Eigen::MatrixXd accum = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t j = 0; j < n; ++j) {
      const Eigen::VectorXd row =
          Eigen::Map<const Eigen::VectorXd>(x.row(j).data(), d);
      const double q = row.dot(llt.solve(row));
      if (!(q > 0.0) || !std::isfinite(q)) {
        throw NumericalError(
            "acg fit: nonpositive quadratic form in fixed-point step");
      }
      accum.selfadjointView<Eigen::Lower>().rankUpdate(row, 1.0 / q);
    }
    Eigen::MatrixXd next = accum.selfadjointView<Eigen::Lower>();
    next *= static_cast<double>(d) / static_cast<double>(n);
    next *= static_cast<double>(d) / next.trace();
    diff = (next - sigma).norm();
    sigma = next;
    if (diff <= 1e-10) {
      converged = true;
      ++iter;
      break;
    }
  }

  FitResult result;
  result.spec = make_acg(sigma);
  result.iterations = iter;
  result.converged = converged;
  result.tolerance_achieved = diff;
  double loglik = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    loglik += log_density(result.spec, x.row(j));
  }
  result.log_likelihood = loglik;
  return result;
}

FitResult fit_kent(const Sample& x) {
  if (x.dim() != 3) {
    throw UnsupportedDimensionError(
        "kent fit is defined on S^2 (dim == 3); got dim " +
        std::to_string(x.dim()));
  }
  const std::size_t n = x.size();
  if (n < 4) {
    throw OutOfRangeError("kent fit requires at least 4 observations; got " +
                          std::to_string(n));
  }
  const Eigen::Vector3d mean = sample_mean(x);
  const double rbar = mean.norm();
  if (rbar < 1e-12) {
    throw DegenerateMeanError(
        "kent fit: resultant length " + std::to_string(rbar) +
        " leaves the mean direction undefined");
  }
  const Eigen::Matrix3d s = scatter_matrix(x);

  // Householder reflection taking e1 to the mean direction.
  const Eigen::Vector3d mu = mean / rbar;
  Eigen::Matrix3d h = Eigen::Matrix3d::Identity();
  {
    Eigen::Vector3d v = mu - Eigen::Vector3d::UnitX();
    const double vv = v.squaredNorm();
    if (vv > 1e-28) {
      h -= (2.0 / vv) * (v * v.transpose());
    }
  }
  const Eigen::Matrix3d b = h * s * h;

  // Rotate the tangent plane so the off-diagonal moment vanishes; the
  // leading tangent axis then carries the larger second moment.
  const double psi = 0.5 * std::atan2(2.0 * b(1, 2), b(1, 1) - b(2, 2));
  Eigen::Matrix3d g = Eigen::Matrix3d::Identity();
  g(1, 1) = std::cos(psi);
  g(1, 2) = -std::sin(psi);
  g(2, 1) = std::sin(psi);
  g(2, 2) = std::cos(psi);
  Eigen::Matrix3d axes = h * g;
  if (axes.col(1).dot(s * axes.col(1)) < axes.col(2).dot(s * axes.col(2))) {
    axes.col(1).swap(axes.col(2));
  }

  const double r1 = axes.col(0).dot(mean);
  const double t2 =
      axes.col(1).dot(s * axes.col(1)) - axes.col(2).dot(s * axes.col(2));

  // Moment estimators seed the likelihood maximization.
  const double w = std::sqrt((b(1, 1) - b(2, 2)) * (b(1, 1) - b(2, 2)) +
                             4.0 * b(1, 2) * b(1, 2));
  const double den_minus = std::max(2.0 - 2.0 * rbar - w, 1e-8);
  const double den_plus = std::max(2.0 - 2.0 * rbar + w, 1e-8);
  double kappa = std::clamp(1.0 / den_minus + 1.0 / den_plus, kKentKappaMin,
                            kKentKappaMax);
  double beta = std::clamp(0.5 * (1.0 / den_minus - 1.0 / den_plus), 0.0,
                           kKentBetaMax);

  // Per-observation log-likelihood with the axes held at their moment
  // estimates; concave in (kappa, beta), so coordinate-wise golden-section
  // ascent converges.  Both coordinates are searched on a log grid.
  const auto objective = [&](double k, double bt) {
    return k * r1 + bt * t2 - kent_log_normalizer(k, bt);
  };
  constexpr double kBetaShift = 1e-8;
  bool converged = false;
  double change = std::numeric_limits<double>::infinity();
  std::size_t sweep = 0;
  constexpr std::size_t kMaxSweeps = 500;
  for (; sweep < kMaxSweeps; ++sweep) {
    const double kappa_prev = kappa;
    const double beta_prev = beta;
    kappa = std::exp(golden_max(
        [&](double lk) { return objective(std::exp(lk), beta); },
        std::log(kKentKappaMin), std::log(kKentKappaMax), 1e-9));
    beta = std::exp(golden_max(
                [&](double lb) {
                  return objective(kappa, std::exp(lb) - kBetaShift);
                },
                std::log(kBetaShift), std::log(kKentBetaMax + kBetaShift),
                1e-9)) -
           kBetaShift;
    beta = std::max(beta, 0.0);
    change = std::abs(kappa - kappa_prev) / (1.0 + kappa_prev) +
             std::abs(beta - beta_prev) / (1.0 + beta_prev);
    if (change <= 1e-8) {
      converged = true;
      ++sweep;
      break;
    }
  }

  FitResult result;
  result.spec = make_kent_relaxed(kappa, beta, axes);
  result.iterations = sweep;
  result.converged = converged;
  result.tolerance_achieved = change;
  result.log_likelihood = static_cast<double>(n) * objective(kappa, beta);
  return result;
}

std::string_view to_string(FitFamily family) {
  switch (family) {
    case FitFamily::vmf:
      return "vmf";
    case FitFamily::acg:
      return "acg";
    case FitFamily::kent:
      return "kent";
  }
  throw InvalidConfigError("unknown fit family enumerator");
}

FitFamily parse_fit_family(std::string_view name) {
  if (name == "vmf") {
    return FitFamily::vmf;
  }
  if (name == "acg") {
    return FitFamily::acg;
  }
  if (name == "kent") {
    return FitFamily::kent;
  }
  throw InvalidConfigError("unknown fit family '" + std::string(name) +
                           "'; expected vmf, acg, or kent");
}

FitResult fit(FitFamily family, const Sample& x) {
  switch (family) {
    case FitFamily::vmf:
      return fit_vmf(x);
    case FitFamily::acg:
      return fit_acg(x);
    case FitFamily::kent:
      return fit_kent(x);
  }
  throw InvalidConfigError("unknown fit family enumerator");
}

}  // namespace sphgof
