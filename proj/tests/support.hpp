#pragma once

// Seeded generators and test doubles shared by the unit tests and the acceptance runner.

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "hadamard/euclidean.hpp"
#include "hadamard/extension.hpp"
#include "hadamard/spider.hpp"

namespace testkit {

using namespace hadamard;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline EuclideanPoint random_point(std::mt19937_64& rng, std::size_t dim, double scale = 1.0) {
  EuclideanPoint p{std::vector<double>(dim)};
  for (auto& c : p.coords) c = uniform(rng, -scale, scale);
  return p;
}

// Dual element acting as the vector v: [1 ->0 v].
inline DualElement<EuclideanSpace> vector_dual(const EuclideanPoint& v) {
  return DualElement<EuclideanSpace>::single(1.0, EuclideanPoint{std::vector<double>(v.coords.size())}, v);
}

// x -> A x + b with A = s I + K, s > 0 and K skew: strongly monotone.
inline Relation<EuclideanSpace> monotone_relation(std::mt19937_64& rng, std::size_t dim,
                                                  std::size_t pairs) {
  const double s = uniform(rng, 0.2, 2.0);
  std::vector<std::vector<double>> k(dim, std::vector<double>(dim, 0.0));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      k[i][j] = uniform(rng, -2.0, 2.0);
      k[j][i] = -k[i][j];
    }
  }
  const auto shift = random_point(rng, dim);
  Relation<EuclideanSpace> m;
  for (std::size_t n = 0; n < pairs; ++n) {
    const auto x = random_point(rng, dim);
    EuclideanPoint v{std::vector<double>(dim)};
    for (std::size_t i = 0; i < dim; ++i) {
      v.coords[i] = s * x.coords[i] + shift.coords[i];
      for (std::size_t j = 0; j < dim; ++j) v.coords[i] += k[i][j] * x.coords[j];
    }
    m.pairs.push_back({x, vector_dual(v)});
  }
  return m;
}

// Two pairs whose dual vectors point against each other: <x<> - y<>, ->yx> < 0.
inline Relation<EuclideanSpace> non_monotone_relation(std::mt19937_64& rng, std::size_t dim,
                                                      std::size_t pairs) {
  auto m = monotone_relation(rng, dim, pairs);
  const auto x = random_point(rng, dim);
  auto y = random_point(rng, dim);
  EuclideanPoint dx{std::vector<double>(dim)}, dy{std::vector<double>(dim)};
  for (std::size_t i = 0; i < dim; ++i) {
    dx.coords[i] = -(x.coords[i] - y.coords[i]);
    dy.coords[i] = x.coords[i] - y.coords[i];
  }
  m.pairs.push_back({x, vector_dual(dx)});
  m.pairs.push_back({y, vector_dual(dy)});
  return m;
}

inline SpiderPoint random_spider_point(std::mt19937_64& rng, std::uint64_t max_branch = 5,
                                       long max_den = 8) {
  const auto b = std::uniform_int_distribution<std::uint64_t>(1, max_branch)(rng);
  const long q = std::uniform_int_distribution<long>(1, max_den)(rng);
  const long k = std::uniform_int_distribution<long>(0, q)(rng);
  return SpiderPoint(b, Rational(k, q));
}

inline DualElement<SpiderSpace> random_spider_dual(std::mt19937_64& rng, std::size_t max_terms = 2) {
  DualElement<SpiderSpace> f;
  const auto n = std::uniform_int_distribution<std::size_t>(1, max_terms)(rng);
  for (std::size_t i = 0; i < n; ++i) {
    const long w = std::uniform_int_distribution<long>(-3, 3)(rng);
    f.terms.push_back({Rational(w == 0 ? 1 : w, 2), random_spider_point(rng), random_spider_point(rng)});
  }
  return f;
}

inline Relation<SpiderSpace> random_spider_relation(std::mt19937_64& rng, std::size_t pairs) {
  Relation<SpiderSpace> m;
  for (std::size_t i = 0; i < pairs; ++i) m.pairs.push_back({random_spider_point(rng), random_spider_dual(rng)});
  return m;
}

// A finite metric space on the points 0..3 given by a distance table. Not geodesic; used to
// exercise the identity checker on a metric that is not CAT(0).
struct TableMetric {
  using Point = int;
  using Scalar = Rational;
  std::array<std::array<Rational, 4>, 4> d;

  Rational tolerance() const { return Rational(0); }
  void validate(const Point& p) const {
    if (p < 0 || p > 3) throw SpaceMismatch("point outside the table metric");
  }
  Rational distance(int a, int b) const { return d[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  Rational squared_distance(int a, int b) const { return distance(a, b) * distance(a, b); }
};

struct TableSampler {
  std::mt19937_64 rng;
  int point() { return std::uniform_int_distribution<int>(0, 3)(rng); }
};

}  // namespace testkit
