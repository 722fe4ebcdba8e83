#include "hadamard/spider.hpp"

#include <string>

namespace hadamard {

SpiderPoint::SpiderPoint(std::uint64_t branch, Rational radius)
    : branch_(branch), radius_(std::move(radius)) {
  if (branch_ == 0) throw DomainError("spider branch must be >= 1");
  if (radius_ < Rational(0) || radius_ > Rational(1)) {
    throw DomainError("spider radius " + radius_.str() + " outside [0,1]");
  }
  if (radius_.is_zero()) branch_ = 1;
}

Rational SpiderSpace::distance(const Point& x, const Point& y) const {
  if (x.branch() == y.branch()) return abs(x.radius() - y.radius());
  return x.radius() + y.radius();
}

Rational SpiderSpace::squared_distance(const Point& x, const Point& y) const {
  const Rational d = distance(x, y);
  return d * d;
}

SpiderPoint SpiderSpace::geodesic(const Point& x, const Point& y, const Rational& lambda) const {
  if (x == y) return x;
  const Rational& t = x.radius();
  const Rational& s = y.radius();
  const Rational one(1);
  if (x.branch() == y.branch()) {
    return SpiderPoint(x.branch(), (one - lambda) * t + lambda * s);
  }
  // Distinct branches: walk down branch x to the origin, then up branch y.
  const Rational split = t / (t + s);
  if (lambda <= split) return SpiderPoint(x.branch(), (one - lambda) * t - lambda * s);
  return SpiderPoint(y.branch(), (lambda - one) * t + lambda * s);
}

std::vector<Rational> SpiderSpace::breakpoints(const Point& x, const Point& y) const {
  if (x.branch() == y.branch() || x.is_origin() || y.is_origin()) return {};
  return {x.radius() / (x.radius() + y.radius())};
}

std::vector<SpiderPoint> SpiderSpace::simpler_points(const Point& x) const {
  if (x.is_origin()) return {SpiderPoint(1, Rational(1, 2)), SpiderPoint(1, Rational(1))};
  return {SpiderPoint(x.branch(), Rational(1, 2)),
          SpiderPoint(x.branch(), Rational(1, static_cast<long>(x.branch())))};
}

SpiderPoint SpiderSampler::point() {
  const auto branch = std::uniform_int_distribution<std::uint64_t>(1, max_branch_)(rng_);
  return SpiderPoint(branch, unit());
}

Rational SpiderSampler::unit() {
  const long den = std::uniform_int_distribution<long>(1, max_den_)(rng_);
  const long num = std::uniform_int_distribution<long>(0, den)(rng_);
  return Rational(num, den);
}

}  // namespace hadamard
