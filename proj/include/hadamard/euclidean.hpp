#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "hadamard/space.hpp"

namespace hadamard {

struct EuclideanPoint {
  std::vector<double> coords;

  friend bool operator==(const EuclideanPoint&, const EuclideanPoint&) = default;
};

// R^n with the Euclidean metric. Flat; float arithmetic checked against `tol`.
class EuclideanSpace {
 public:
  using Point = EuclideanPoint;
  using Scalar = double;

  static constexpr double kDefaultTolerance = 1e-9;

  explicit EuclideanSpace(std::size_t dim, double tol = kDefaultTolerance);

  std::size_t dim() const { return dim_; }
  double tolerance() const { return tol_; }

  void validate(const Point& p) const;
  Point point(std::vector<double> coords) const;

  double distance(const Point& x, const Point& y) const;
  double squared_distance(const Point& x, const Point& y) const;
  Point geodesic(const Point& x, const Point& y, double lambda) const;

  // x rounded to integers, then to halves; used to shrink witnesses.
  std::vector<Point> simpler_points(const Point& x) const;

  friend bool operator==(const EuclideanSpace&, const EuclideanSpace&) = default;

 private:
  std::size_t dim_;
  double tol_;
};

// Seeded sampler of points uniform in [-scale, scale]^n and parameters uniform in [0,1].
class EuclideanSampler {
 public:
  EuclideanSampler(const EuclideanSpace& space, std::uint64_t seed, double scale = 1.0)
      : dim_(space.dim()), scale_(scale), rng_(seed) {}

  EuclideanPoint point();
  double unit();
  std::mt19937_64& engine() { return rng_; }

 private:
  std::size_t dim_;
  double scale_;
  std::mt19937_64 rng_;
};

}  // namespace hadamard
