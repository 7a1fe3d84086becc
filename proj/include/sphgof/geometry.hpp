#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sphgof/errors.hpp"

namespace sphgof {

// A point on the unit sphere S^{d-1}, d >= 2.  The norm is checked to lie
// within 1e-10 of 1 at construction; use normalize() to project a raw vector.
class UnitVector {
 public:
  explicit UnitVector(std::vector<double> coords);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<double>& coords() const { return coords_; }

 private:
  std::vector<double> coords_;
};

// Projects v onto the sphere.  Throws ZeroVectorError when ||v|| <= 1e-300.
UnitVector normalize(const std::vector<double>& v);

// Maps declination/inclination in degrees to a unit vector in R^3 as
// (sin I, cos I cos D, cos I sin D).  Domains: D in [0, 360], I in [-90, 90].
UnitVector from_dec_inc(double dec_deg, double inc_deg);

// Surface area of S^{d-1}: 2 pi^{d/2} / Gamma(d/2).
double surface_area(std::size_t d);

// A fixed-dimension collection of n >= 1 unit vectors stored row-major for
// cache-friendly pairwise sweeps.  Rows are validated at construction.
class Sample {
 public:
  Sample(std::size_t n, std::size_t d, std::vector<double> row_major);
  explicit Sample(const std::vector<UnitVector>& points);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return d_; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * d_, d_};
  }
  const std::vector<double>& data() const { return data_; }

  // Concatenates rows of a then b (same dimension required).
  static Sample concat(const Sample& a, const Sample& b);

 private:
  Sample() = default;
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> data_;
};

}  // namespace sphgof
