#include "sphgof/samplers.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "sphgof/errors.hpp"

namespace sphgof {

namespace {

// Fills out[0..d) with a uniform draw on S^{d-1} (normalized Gaussians).
void draw_uniform_row(RandomStream& rng, std::size_t d, double* out) {
  for (;;) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      out[i] = rng.next_normal();
      s += out[i] * out[i];
    }
    const double r = std::sqrt(s);
    if (r > 1e-300) {
      for (std::size_t i = 0; i < d; ++i) out[i] /= r;
      return;
    }
  }
}

// Per-call constants of the Wood rejection sampler plus the Householder
// reflection taking the pole e1 onto the mean direction.
struct VmfRowSampler {
  std::size_t d;
  double kappa;
  double b, x0, c;
  std::vector<double> hh;  // empty => identity rotation
  bool use_hh = false;

  VmfRowSampler(const std::vector<double>& theta, double kappa_in)
      : d(theta.size()), kappa(kappa_in) {
    const double dm1 = static_cast<double>(d) - 1.0;
    if (kappa > 0.0) {
      b = dm1 / (2.0 * kappa + std::sqrt(4.0 * kappa * kappa + dm1 * dm1));
      x0 = (1.0 - b) / (1.0 + b);
      c = kappa * x0 + dm1 * std::log(1.0 - x0 * x0);
    } else {
      b = x0 = c = 0.0;
    }
    hh.assign(d, 0.0);
    hh[0] = 1.0;
    double nv = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      hh[i] -= theta[i];
      nv += hh[i] * hh[i];
    }
    nv = std::sqrt(nv);
    if (nv > 1e-14) {
      for (std::size_t i = 0; i < d; ++i) hh[i] /= nv;
      use_hh = true;
    }
  }

  void draw(RandomStream& rng, double* out) const {
    if (kappa == 0.0) {
      draw_uniform_row(rng, d, out);
      return;
    }
    const double dm1 = static_cast<double>(d) - 1.0;
    const double shape = 0.5 * dm1;
    double w;
    for (;;) {
      const double z = rng.next_beta(shape, shape);
      const double u = rng.next_double();
      w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
      if (kappa * w + dm1 * std::log(1.0 - x0 * w) - c >= std::log(u) && u > 0.0) {
        break;
      }
    }
    // Uniform tangent direction on S^{d-2}.
    out[0] = w;
    if (d == 2) {
      const double sign = rng.next_normal() >= 0.0 ? 1.0 : -1.0;
      out[1] = sign * std::sqrt(std::max(0.0, 1.0 - w * w));
    } else {
      double s = 0.0;
      for (std::size_t i = 1; i < d; ++i) {
        out[i] = rng.next_normal();
        s += out[i] * out[i];
      }
      const double r = std::sqrt(s);
      const double scale = std::sqrt(std::max(0.0, 1.0 - w * w)) / r;
      for (std::size_t i = 1; i < d; ++i) out[i] *= scale;
    }
    if (use_hh) {
      double proj = 0.0;
      for (std::size_t i = 0; i < d; ++i) proj += hh[i] * out[i];
      proj *= 2.0;
      for (std::size_t i = 0; i < d; ++i) out[i] -= proj * hh[i];
    }
  }
};

void sample_vmf(const VmfSpec& s, std::size_t n, RandomStream& rng, double* out) {
  const VmfRowSampler row(s.theta.coords(), s.kappa);
  for (std::size_t i = 0; i < n; ++i) row.draw(rng, out + i * row.d);
}

void sample_mixture(const VmfMixtureSpec& s, std::size_t n, RandomStream& rng,
                    double* out) {
  const std::size_t k = s.weights.size();
  const std::size_t d = s.components.front().theta.dim();
  std::vector<VmfRowSampler> rows;
  rows.reserve(k);
  for (const auto& c : s.components) rows.emplace_back(c.theta.coords(), c.kappa);
  std::vector<double> cum(k, 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    acc += s.weights[i];
    cum[i] = acc;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t comp = 0;
    if (k > 1) {
      // Component index first, from one uniform against cumulative weights.
      const double u = rng.next_double();
      while (comp + 1 < k && u >= cum[comp]) ++comp;
    }
    rows[comp].draw(rng, out + i * d);
  }
}

void sample_acg(const AcgSpec& s, std::size_t n, RandomStream& rng, double* out) {
  const std::size_t d = static_cast<std::size_t>(s.sigma.rows());
  Eigen::LLT<Eigen::MatrixXd> llt(s.sigma);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("ACG sigma Cholesky failed in sampler");
  }
  const Eigen::MatrixXd l = llt.matrixL();
  Eigen::VectorXd z(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < n; ++i) {
    for (;;) {
      for (std::size_t j = 0; j < d; ++j) {
        z[static_cast<Eigen::Index>(j)] = rng.next_normal();
      }
      const Eigen::VectorXd v = l * z;
      const double r = v.norm();
      if (r > 1e-300) {
        for (std::size_t j = 0; j < d; ++j) {
          out[i * d + j] = v[static_cast<Eigen::Index>(j)] / r;
        }
        break;
      }
    }
  }
}

void sample_kent(const KentSpec& s, std::size_t n, RandomStream& rng, double* out) {
  // Work in the axes frame, where the exponent is
  //   kappa*v1 + beta*v2^2 - beta*v3^2.
  // Bound kappa*v1 <= kappa/2*(1 + v1^2), giving a Bingham kernel
  // exp(v' diag(kappa/2, beta, -beta) v); shift to exp(-v'Av) with
  // A = lam_max*I - diag(...) (min eigenvalue 0), then reject from the ACG
  // envelope with Omega = I + (2/b)A where sum_i 1/(b + 2 a_i) = 1.
  const double kappa = s.kappa;
  const double beta = s.beta;
  const double lam_max = std::max(0.5 * kappa, beta);
  const double a[3] = {lam_max - 0.5 * kappa, lam_max - beta, lam_max + beta};

  double lo = 1e-12, hi = 3.0;
  auto excess = [&](double bb) {
    return 1.0 / (bb + 2.0 * a[0]) + 1.0 / (bb + 2.0 * a[1]) +
           1.0 / (bb + 2.0 * a[2]) - 1.0;
  };
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  const double b = 0.5 * (lo + hi);

  double omega[3], sig[3];
  for (int i = 0; i < 3; ++i) {
    omega[i] = 1.0 + 2.0 * a[i] / b;
    sig[i] = 1.0 / std::sqrt(omega[i]);
  }
  const double log_m = 0.5 * (3.0 - b) - 1.5 * std::log(3.0 / b);

  for (std::size_t i = 0; i < n; ++i) {
    double v[3];
    for (;;) {
      double z[3], s2 = 0.0;
      for (int j = 0; j < 3; ++j) {
        z[j] = sig[j] * rng.next_normal();
        s2 += z[j] * z[j];
      }
      const double r = std::sqrt(s2);
      if (!(r > 1e-300)) continue;
      for (int j = 0; j < 3; ++j) v[j] = z[j] / r;
      const double q = a[0] * v[0] * v[0] + a[1] * v[1] * v[1] + a[2] * v[2] * v[2];
      const double w =
          omega[0] * v[0] * v[0] + omega[1] * v[1] * v[1] + omega[2] * v[2] * v[2];
      const double one_minus = 1.0 - v[0];
      const double log_acc =
          -q + log_m + 1.5 * std::log(w) - 0.5 * kappa * one_minus * one_minus;
      const double u = rng.next_double();
      if (u > 0.0 && std::log(u) < log_acc) break;
    }
    for (int r = 0; r < 3; ++r) {
      out[i * 3 + r] =
          s.axes(r, 0) * v[0] + s.axes(r, 1) * v[1] + s.axes(r, 2) * v[2];
    }
  }
}

}  // namespace

Sample sample(const DistributionSpec& spec, std::size_t n, SeedStream seed) {
  if (n < 1) throw EmptyInputError("sample requires n >= 1");
  const std::size_t d = dimension(spec);
  RandomStream rng(seed);
  std::vector<double> data(n * d);

  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, UniformSpec>) {
          for (std::size_t i = 0; i < n; ++i) {
            draw_uniform_row(rng, s.d, data.data() + i * s.d);
          }
        } else if constexpr (std::is_same_v<T, VmfSpec>) {
          sample_vmf(s, n, rng, data.data());
        } else if constexpr (std::is_same_v<T, VmfMixtureSpec>) {
          sample_mixture(s, n, rng, data.data());
        } else if constexpr (std::is_same_v<T, AcgSpec>) {
          sample_acg(s, n, rng, data.data());
        } else {
          sample_kent(s, n, rng, data.data());
        }
      },
      spec);

  // Rows are unit by construction; renormalize to absorb rounding.
  for (std::size_t i = 0; i < n; ++i) {
    double r2 = 0.0;
    for (std::size_t j = 0; j < d; ++j) r2 += data[i * d + j] * data[i * d + j];
    const double r = std::sqrt(r2);
    for (std::size_t j = 0; j < d; ++j) data[i * d + j] /= r;
  }
  return Sample(n, d, std::move(data));
}

}  // namespace sphgof
