#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hadamard/errors.hpp"
#include "hadamard/scalar.hpp"

namespace hadamard {

// A metric space model. Models are immutable values; every operation is const.
//
//   distance(x, y)          metric distance
//   squared_distance(x, y)  d(x,y)^2, computed without a square root where possible
//   validate(x)             throws SpaceMismatch / DomainError for foreign points
//   tolerance()             zero for exact models, the float tolerance otherwise
template <class S>
concept MetricSpace = requires(const S& s, const typename S::Point& p) {
  typename S::Point;
  typename S::Scalar;
  requires Scalar<typename S::Scalar>;
  { s.distance(p, p) } -> std::same_as<typename S::Scalar>;
  { s.squared_distance(p, p) } -> std::same_as<typename S::Scalar>;
  { s.tolerance() } -> std::same_as<typename S::Scalar>;
  s.validate(p);
  { p == p } -> std::convertible_to<bool>;
};

// A uniquely geodesic space: geodesic(x, y, t) is the point (1-t)x (+) t y.
template <class S>
concept GeodesicSpace =
    MetricSpace<S> && requires(const S& s, const typename S::Point& p, const typename S::Scalar& t) {
      { s.geodesic(p, p, t) } -> std::same_as<typename S::Point>;
    };

template <MetricSpace S>
using PointOf = typename S::Point;
template <MetricSpace S>
using ScalarOf = typename S::Scalar;

template <MetricSpace S>
inline constexpr bool kExactSpace = kIsExact<ScalarOf<S>>;

// Parameters in (0,1) where the geodesic from x to y changes its closed form.
// Models without such structure contribute nothing.
template <GeodesicSpace S>
std::vector<ScalarOf<S>> geodesic_breakpoints(const S& space, const PointOf<S>& x,
                                               const PointOf<S>& y) {
  if constexpr (requires { space.breakpoints(x, y); }) {
    return space.breakpoints(x, y);
  } else {
    return {};
  }
}

template <MetricSpace S>
ScalarOf<S> distance(const S& space, const PointOf<S>& x, const PointOf<S>& y) {
  space.validate(x);
  space.validate(y);
  return space.distance(x, y);
}

template <GeodesicSpace S>
PointOf<S> geodesic(const S& space, const PointOf<S>& x, const PointOf<S>& y,
                    const ScalarOf<S>& lambda) {
  require_unit_interval(lambda, "geodesic parameter");
  space.validate(x);
  space.validate(y);
  return space.geodesic(x, y, lambda);
}

namespace detail {

template <GeodesicSpace S>
void check_simplex_weights(const S& space, std::span<const PointOf<S>> points,
                           std::span<const ScalarOf<S>> weights) {
  using T = ScalarOf<S>;
  if (points.empty()) throw DomainError("convex combination of an empty point list");
  if (points.size() != weights.size()) {
    throw DomainError("convex combination: " + std::to_string(points.size()) + " points but " +
                      std::to_string(weights.size()) + " weights");
  }
  T sum(0);
  for (const T& w : weights) {
    if (!(w > T(0)) || w > T(1)) {
      throw DomainError("convex combination weight " + to_string(w) + " outside (0,1]");
    }
    sum += w;
  }
  if (!near(sum, T(1), space.tolerance())) {
    throw DomainError("convex combination weights sum to " + to_string(sum) + ", not 1");
  }
}

}  // namespace detail

// n-ary convex combination defined by the right-nested recursion
//
//   (+)_{i<=n} l_i v_i = (1 - l_n) ( (+)_{i<n} l_i/(1 - l_n) v_i ) (+) l_n v_n .
//
// Unrolled, step k joins the running point to v_k with parameter l_k / (l_1 + ... + l_k),
// which is what the loop computes. The result depends on the order of `points` unless the
// space is flat.
template <GeodesicSpace S>
PointOf<S> convex_combination(const S& space, std::span<const PointOf<S>> points,
                              std::span<const ScalarOf<S>> weights) {
  using T = ScalarOf<S>;
  detail::check_simplex_weights(space, points, weights);
  for (const auto& p : points) space.validate(p);

  PointOf<S> acc = points[0];
  T prefix = weights[0];
  for (std::size_t k = 1; k < points.size(); ++k) {
    prefix += weights[k];
    T step = weights[k] / prefix;
    if (step > T(1)) step = T(1);  // float round-off only
    acc = space.geodesic(acc, points[k], step);
  }
  return acc;
}

template <GeodesicSpace S>
PointOf<S> convex_combination(const S& space, const std::vector<PointOf<S>>& points,
                              const std::vector<ScalarOf<S>>& weights) {
  return convex_combination(space, std::span<const PointOf<S>>(points),
                            std::span<const ScalarOf<S>>(weights));
}

// Same as convex_combination but entries with zero weight are removed first. Float weights
// within tolerance of zero count as zero; the rest are renormalised.
template <GeodesicSpace S>
PointOf<S> convex_combination_dropping_zeros(const S& space, std::span<const PointOf<S>> points,
                                             std::span<const ScalarOf<S>> weights) {
  using T = ScalarOf<S>;
  if (points.size() != weights.size()) {
    throw DomainError("convex combination: point and weight counts differ");
  }
  std::vector<PointOf<S>> kept_points;
  std::vector<T> kept_weights;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (weights[i] < T(0)) throw DomainError("negative convex combination weight");
    if (near_zero(weights[i], space.tolerance())) continue;
    kept_points.push_back(points[i]);
    kept_weights.push_back(weights[i]);
  }
  if constexpr (!kIsExact<T>) {
    // several dropped weights can together exceed the tolerance
    T sum(0);
    for (const T& w : kept_weights) sum += w;
    if (sum > T(0)) {
      for (T& w : kept_weights) w /= sum;
    }
  }
  return convex_combination(space, std::span<const PointOf<S>>(kept_points),
                            std::span<const T>(kept_weights));
}

}  // namespace hadamard
