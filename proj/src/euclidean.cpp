#include "hadamard/euclidean.hpp"

#include <cmath>
#include <string>

namespace hadamard {

EuclideanSpace::EuclideanSpace(std::size_t dim, double tol) : dim_(dim), tol_(tol) {
  if (dim == 0) throw DomainError("euclidean space needs dimension >= 1");
  if (!(tol >= 0.0) || !std::isfinite(tol)) throw DomainError("tolerance must be finite and >= 0");
}

void EuclideanSpace::validate(const Point& p) const {
  if (p.coords.size() != dim_) {
    throw SpaceMismatch("point of dimension " + std::to_string(p.coords.size()) +
                        " used in R^" + std::to_string(dim_));
  }
  for (double c : p.coords) {
    if (!std::isfinite(c)) throw DomainError("non-finite coordinate");
  }
}

EuclideanPoint EuclideanSpace::point(std::vector<double> coords) const {
  Point p{std::move(coords)};
  validate(p);
  return p;
}

double EuclideanSpace::squared_distance(const Point& x, const Point& y) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    const double d = x.coords[i] - y.coords[i];
    sum += d * d;
  }
  return sum;
}

double EuclideanSpace::distance(const Point& x, const Point& y) const {
  return std::sqrt(squared_distance(x, y));
}

EuclideanPoint EuclideanSpace::geodesic(const Point& x, const Point& y, double lambda) const {
  if (x == y) return x;
  Point z{std::vector<double>(dim_)};
  for (std::size_t i = 0; i < dim_; ++i) {
    z.coords[i] = (1.0 - lambda) * x.coords[i] + lambda * y.coords[i];
  }
  return z;
}

std::vector<EuclideanPoint> EuclideanSpace::simpler_points(const Point& x) const {
  Point whole = x;
  Point halves = x;
  for (double& c : whole.coords) c = std::round(c);
  for (double& c : halves.coords) c = std::round(2.0 * c) / 2.0;
  return {whole, halves};
}

EuclideanPoint EuclideanSampler::point() {
  std::uniform_real_distribution<double> u(-scale_, scale_);
  EuclideanPoint p{std::vector<double>(dim_)};
  for (auto& c : p.coords) c = u(rng_);
  return p;
}

double EuclideanSampler::unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

}  // namespace hadamard
