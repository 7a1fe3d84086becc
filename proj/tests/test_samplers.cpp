#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "quadrature.hpp"
#include "sphgof/distributions.hpp"
#include "sphgof/samplers.hpp"
#include "sphgof/special.hpp"

using namespace sphgof;

namespace {

UnitVector e1(std::size_t d) {
  std::vector<double> v(d, 0.0);
  v[0] = 1.0;
  return UnitVector(std::move(v));
}

Eigen::Vector3d mean_of(const Sample& s) {
  Eigen::Vector3d m = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (int j = 0; j < 3; ++j) m[j] += s.row(i)[static_cast<std::size_t>(j)];
  }
  return m / static_cast<double>(s.size());
}

Eigen::Matrix3d scatter_of(const Sample& s) {
  Eigen::Matrix3d t = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < s.size(); ++i) {
    Eigen::Vector3d x(s.row(i)[0], s.row(i)[1], s.row(i)[2]);
    t += x * x.transpose();
  }
  return t / static_cast<double>(s.size());
}

}  // namespace

TEST_CASE("sampling is a pure function of (spec, n, seed)") {
  const auto spec = make_vmf(e1(3), 2.5);
  const Sample a = sample(spec, 50, SeedStream{123, 4});
  const Sample b = sample(spec, 50, SeedStream{123, 4});
  CHECK(a.data() == b.data());
  const Sample c = sample(spec, 50, SeedStream{123, 5});
  CHECK(a.data() != c.data());
}

TEST_CASE("every row of every family lies on the sphere") {
  Eigen::MatrixXd sigma(3, 3);
  sigma << 2.0, 0.3, 0.0, 0.3, 1.0, -0.2, 0.0, -0.2, 0.5;
  const std::vector<DistributionSpec> specs = {
      make_uniform(3), make_vmf(e1(3), 7.0),
      make_vmf_mixture({0.5, 0.5},
                       {VmfSpec{normalize({-1, 0, 0}), 2.0}, VmfSpec{e1(3), 2.0}}),
      make_acg(sigma),
      make_kent(5.0, 2.0, Eigen::Matrix3d::Identity()),
      make_kent_relaxed(0.597, 1.043, Eigen::Matrix3d::Identity())};
  for (const auto& spec : specs) {
    const Sample s = sample(spec, 500, SeedStream{1, 1});
    for (std::size_t i = 0; i < s.size(); ++i) {
      double r2 = 0.0;
      for (std::size_t j = 0; j < 3; ++j) r2 += s.row(i)[j] * s.row(i)[j];
      CHECK(std::abs(std::sqrt(r2) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("uniform sampler: zero mean and isotropic scatter") {
  const Sample s = sample(make_uniform(3), 40000, SeedStream{2, 0});
  const Eigen::Vector3d m = mean_of(s);
  CHECK(m.norm() < 0.02);
  const Eigen::Matrix3d t = scatter_of(s);
  CHECK((t - Eigen::Matrix3d::Identity() / 3.0).norm() < 0.02);
}

TEST_CASE("rotationally symmetric sampler matches its resultant-length curve") {
  // E<X, mu> = A_3(kappa); the sample version must sit within MC noise.
  for (const double kappa : {0.5, 1.0, 2.0, 5.0}) {
    const Sample s = sample(make_vmf(e1(3), kappa), 20000,
                            SeedStream{3, static_cast<std::uint64_t>(kappa * 8)});
    double dot = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) dot += s.row(i)[0];
    dot /= static_cast<double>(s.size());
    CHECK(dot == doctest::Approx(mean_resultant_length(3, kappa)).epsilon(0.015));
  }
  // Off-axis mean direction: the resultant points along theta.
  const UnitVector mu = normalize({1.0, 2.0, -2.0});
  const Sample s = sample(make_vmf(mu, 4.0), 20000, SeedStream{3, 99});
  const Eigen::Vector3d m = mean_of(s);
  const Eigen::Vector3d muv(mu[0], mu[1], mu[2]);
  CHECK(m.normalized().dot(muv) > 0.999);
  CHECK(m.norm() == doctest::Approx(mean_resultant_length(3, 4.0)).epsilon(0.01));
}

TEST_CASE("zero concentration degenerates to the uniform stream bit for bit") {
  const Sample flat = sample(make_vmf(e1(3), 0.0), 200, SeedStream{4, 4});
  const Sample unif = sample(make_uniform(3), 200, SeedStream{4, 4});
  CHECK(flat.data() == unif.data());
}

TEST_CASE("one-component mixture consumes the stream exactly like the component") {
  const auto lone = make_vmf(e1(3), 3.0);
  const auto mix = make_vmf_mixture({1.0}, {VmfSpec{e1(3), 3.0}});
  const Sample a = sample(lone, 100, SeedStream{5, 5});
  const Sample b = sample(mix, 100, SeedStream{5, 5});
  CHECK(a.data() == b.data());
}

TEST_CASE("mixture hits component weights") {
  const UnitVector neg = normalize({-1, 0, 0});
  const auto mix = make_vmf_mixture({0.25, 0.75},
                                    {VmfSpec{neg, 5.0}, VmfSpec{e1(3), 4.0}});
  const Sample s = sample(mix, 40000, SeedStream{6, 0});
  // With these concentrations the sign of x1 identifies the component w.h.p.
  std::size_t positive = 0;
  for (std::size_t i = 0; i < s.size(); ++i) positive += s.row(i)[0] > 0.0;
  const double frac = static_cast<double>(positive) / static_cast<double>(s.size());
  // P(x1 > 0) = 0.75 P(+|comp2) + 0.25 P(+|comp1); both tails are ~2-3%.
  CHECK(frac == doctest::Approx(0.75).epsilon(0.05));
}

TEST_CASE("axial Gaussian sampler: antipodal symmetry in law and scale invariance") {
  Eigen::MatrixXd sigma(3, 3);
  sigma << 1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 3.0;
  const Sample s = sample(make_acg(sigma), 40000, SeedStream{7, 0});
  // Odd moments vanish for an antipodally symmetric law.
  CHECK(mean_of(s).norm() < 0.02);
  // The scatter has the same eigenvectors as sigma with ordered eigenvalues.
  const Eigen::Matrix3d t = scatter_of(s);
  CHECK(t(0, 0) < t(1, 1));
  CHECK(t(1, 1) < t(2, 2));
  CHECK(std::abs(t(0, 1)) < 0.02);
  CHECK(std::abs(t(0, 2)) < 0.02);
  // Scaling sigma leaves the law unchanged: compare scatters across seeds.
  const Sample s2 = sample(make_acg(Eigen::MatrixXd(10.0 * sigma)), 40000,
                           SeedStream{7, 1});
  CHECK((scatter_of(s2) - t).norm() < 0.03);
}

TEST_CASE("oval sampler matches quadrature moments, both regimes") {
  struct Case {
    double kappa, beta;
  };
  for (const Case c : {Case{5.0, 2.0}, Case{0.597, 1.043}}) {
    const auto spec = make_kent_relaxed(c.kappa, c.beta, Eigen::Matrix3d::Identity());
    const Sample s = sample(spec, 100000,
                            SeedStream{8, static_cast<std::uint64_t>(c.kappa * 100)});
    double m1 = 0.0, q2 = 0.0, q3 = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      m1 += s.row(i)[0];
      q2 += s.row(i)[1] * s.row(i)[1];
      q3 += s.row(i)[2] * s.row(i)[2];
    }
    const double inv_n = 1.0 / static_cast<double>(s.size());
    m1 *= inv_n, q2 *= inv_n, q3 *= inv_n;
    const double em1 = testq::integrate_sphere3([&](const std::vector<double>& p) {
      return p[0] * density(spec, UnitVector(p));
    });
    const double eq2 = testq::integrate_sphere3([&](const std::vector<double>& p) {
      return p[1] * p[1] * density(spec, UnitVector(p));
    });
    const double eq3 = testq::integrate_sphere3([&](const std::vector<double>& p) {
      return p[2] * p[2] * density(spec, UnitVector(p));
    });
    CHECK(m1 == doctest::Approx(em1).epsilon(0.05));
    CHECK(q2 == doctest::Approx(eq2).epsilon(0.05));
    CHECK(q3 == doctest::Approx(eq3).epsilon(0.05));
  }
}

TEST_CASE("oval sampler respects rotated axes") {
  // Swap the roles of the axes: mean direction along e3.
  Eigen::Matrix3d axes;
  axes << 0, 1, 0,
          0, 0, 1,
          1, 0, 0;  // columns: e3-ish frame (mean = (0,0,1))
  const auto spec = make_kent(6.0, 1.0, axes);
  const Sample s = sample(spec, 20000, SeedStream{9, 0});
  const Eigen::Vector3d m = mean_of(s);
  CHECK(m[2] > 0.7);
  CHECK(std::abs(m[0]) < 0.03);
  CHECK(std::abs(m[1]) < 0.03);
}

TEST_CASE("higher-dimensional draws stay on the sphere with correct pull") {
  const Sample s = sample(make_vmf(e1(5), 3.0), 20000, SeedStream{10, 0});
  CHECK(s.dim() == 5);
  double dot = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) dot += s.row(i)[0];
  dot /= static_cast<double>(s.size());
  CHECK(dot == doctest::Approx(mean_resultant_length(5, 3.0)).epsilon(0.02));
}
