#include "sphgof/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace sphgof {

namespace {

double norm_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

UnitVector::UnitVector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) {
    throw DimensionError("UnitVector requires dimension >= 2, got " +
                         std::to_string(coords_.size()));
  }
  const double r = norm_of(coords_);
  if (std::abs(r - 1.0) > 1e-10) {
    throw OutOfRangeError("UnitVector norm " + std::to_string(r) +
                          " deviates from 1 by more than 1e-10");
  }
}

UnitVector normalize(const std::vector<double>& v) {
  const double r = norm_of(v);
  if (!(r > 1e-300)) {
    throw ZeroVectorError("cannot normalize vector with norm <= 1e-300");
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / r;
  return UnitVector(std::move(out));
}

UnitVector from_dec_inc(double dec_deg, double inc_deg) {
  if (!(inc_deg >= -90.0 && inc_deg <= 90.0)) {
    throw OutOfRangeError("inclination " + std::to_string(inc_deg) +
                          " outside [-90, 90] degrees");
  }
  if (!(dec_deg >= 0.0 && dec_deg <= 360.0)) {
    throw OutOfRangeError("declination " + std::to_string(dec_deg) +
                          " outside [0, 360] degrees");
  }
  const double rad = std::numbers::pi / 180.0;
  const double d = dec_deg * rad;
  const double i = inc_deg * rad;
  std::vector<double> v = {std::sin(i), std::cos(i) * std::cos(d),
                           std::cos(i) * std::sin(d)};
  return normalize(v);
}

double surface_area(std::size_t d) {
  if (d < 2) throw DimensionError("surface_area requires d >= 2");
  const double half_d = 0.5 * static_cast<double>(d);
  return std::exp(std::numbers::ln2 + half_d * std::log(std::numbers::pi) -
                  std::lgamma(half_d));
}

Sample::Sample(std::size_t n, std::size_t d, std::vector<double> row_major)
    : n_(n), d_(d), data_(std::move(row_major)) {
  if (n_ < 1) throw EmptyInputError("Sample requires at least one row");
  if (d_ < 2) throw DimensionError("Sample requires dimension >= 2");
  if (data_.size() != n_ * d_) {
    throw DimensionError("Sample storage size " + std::to_string(data_.size()) +
                         " does not match n*d = " + std::to_string(n_ * d_));
  }
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d_; ++j) {
      const double x = data_[i * d_ + j];
      s += x * x;
    }
    if (std::abs(std::sqrt(s) - 1.0) > 1e-10) {
      throw OutOfRangeError("Sample row " + std::to_string(i) +
                            " is not a unit vector");
    }
  }
}

Sample::Sample(const std::vector<UnitVector>& points) {
  if (points.empty()) throw EmptyInputError("Sample requires at least one row");
  n_ = points.size();
  d_ = points[0].dim();
  data_.reserve(n_ * d_);
  for (const auto& p : points) {
    if (p.dim() != d_) {
      throw DimensionError("Sample rows must share one dimension");
    }
    data_.insert(data_.end(), p.coords().begin(), p.coords().end());
  }
}

Sample Sample::concat(const Sample& a, const Sample& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("cannot concatenate samples of different dimension");
  }
  Sample out;
  out.n_ = a.size() + b.size();
  out.d_ = a.dim();
  out.data_.reserve(out.n_ * out.d_);
  out.data_.insert(out.data_.end(), a.data().begin(), a.data().end());
  out.data_.insert(out.data_.end(), b.data().begin(), b.data().end());
  return out;
}

}  // namespace sphgof
