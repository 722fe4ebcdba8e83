#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hadamard/rational.hpp"
#include "hadamard/space.hpp"

namespace hadamard {

// Point [(branch, radius)] of the spider tree: countably many unit segments glued at their
// origins. Always stored canonically, so every representative of the origin is (1, 0).
class SpiderPoint {
 public:
  SpiderPoint() : branch_(1), radius_(0) {}
  SpiderPoint(std::uint64_t branch, Rational radius);

  std::uint64_t branch() const { return branch_; }
  const Rational& radius() const { return radius_; }
  bool is_origin() const { return radius_.is_zero(); }

  friend bool operator==(const SpiderPoint&, const SpiderPoint&) = default;

 private:
  std::uint64_t branch_;
  Rational radius_;
};

// The spider R-tree: d = |t - s| on a common branch, t + s across branches.
// Exact rational arithmetic; a non-flat Hadamard space.
class SpiderSpace {
 public:
  using Point = SpiderPoint;
  using Scalar = Rational;

  Rational tolerance() const { return Rational(0); }
  void validate(const Point&) const {}

  Rational distance(const Point& x, const Point& y) const;
  Rational squared_distance(const Point& x, const Point& y) const;
  Point geodesic(const Point& x, const Point& y, const Rational& lambda) const;

  // t / (t + s) for points on distinct branches away from the origin: the parameter at which
  // the geodesic passes through the origin.
  std::vector<Rational> breakpoints(const Point& x, const Point& y) const;

  // Same-branch points with radius 1/2 and 1/branch (branch 1 for the origin), used to shrink
  // witnesses.
  std::vector<Point> simpler_points(const Point& x) const;
};

// Seeded sampler: branch uniform in [1, max_branch], radius k/q with q uniform in
// [1, max_denominator] and k uniform in [0, q]. Parameters are drawn the same way.
class SpiderSampler {
 public:
  explicit SpiderSampler(std::uint64_t seed, std::uint64_t max_branch = 6,
                         long max_denominator = 12)
      : max_branch_(max_branch), max_den_(max_denominator), rng_(seed) {}
  SpiderSampler(const SpiderSpace&, std::uint64_t seed) : SpiderSampler(seed) {}

  SpiderPoint point();
  Rational unit();
  std::mt19937_64& engine() { return rng_; }

 private:
  std::uint64_t max_branch_;
  long max_den_;
  std::mt19937_64 rng_;
};

}  // namespace hadamard
