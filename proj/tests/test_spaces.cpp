#include <doctest.h>

#include <cmath>

#include "hadamard/euclidean.hpp"
#include "hadamard/spider.hpp"
#include "support.hpp"

using namespace hadamard;
using R = Rational;

namespace {

SpiderPoint sp(std::uint64_t b, long num, long den) { return SpiderPoint(b, R(num, den)); }

// The n-ary combination exactly as the right-nested recursion reads, without unrolling.
template <class S>
PointOf<S> nested_combination(const S& space, std::vector<PointOf<S>> pts, std::vector<ScalarOf<S>> w) {
  using T = ScalarOf<S>;
  if (pts.size() == 1) return pts.front();
  const T last = w.back();
  const auto v = pts.back();
  pts.pop_back();
  w.pop_back();
  for (auto& x : w) x = x / (T(1) - last);
  return space.geodesic(nested_combination(space, pts, w), v, last);
}

template <class S, class P>
concept DistanceCallable = requires(const S& s, const P& p) { hadamard::distance(s, p, p); };

}  // namespace

static_assert(MetricSpace<SpiderSpace> && GeodesicSpace<SpiderSpace>);
static_assert(MetricSpace<EuclideanSpace> && GeodesicSpace<EuclideanSpace>);
static_assert(kExactSpace<SpiderSpace> && !kExactSpace<EuclideanSpace>);
static_assert(DistanceCallable<SpiderSpace, SpiderPoint>);
static_assert(!DistanceCallable<SpiderSpace, EuclideanPoint>);
static_assert(!DistanceCallable<EuclideanSpace, SpiderPoint>);

TEST_CASE("spider distance cases") {
  const SpiderSpace s;
  CHECK(distance(s, sp(5, 1, 5), sp(1, 1, 6)) == R(11, 30));
  CHECK(distance(s, sp(2, 1, 2), sp(2, 3, 10)) == R(1, 5));
  CHECK(distance(s, sp(4, 2, 3), sp(4, 2, 3)) == R(0));
  CHECK(distance(s, sp(7, 0, 1), sp(3, 1, 4)) == R(1, 4));
}

TEST_CASE("spider points are canonical") {
  CHECK(sp(9, 0, 1) == SpiderPoint());
  CHECK(sp(9, 0, 1).branch() == 1);
  CHECK_THROWS_AS(SpiderPoint(0, R(1, 2)), DomainError);
  CHECK_THROWS_AS(SpiderPoint(1, R(3, 2)), DomainError);
  CHECK_THROWS_AS(SpiderPoint(1, R(-1, 2)), DomainError);
}

TEST_CASE("spider geodesics") {
  const SpiderSpace s;
  CHECK(geodesic(s, sp(2, 1, 2), sp(1, 1, 2), R(1, 5)) == sp(2, 3, 10));
  CHECK(geodesic(s, sp(1, 1, 2), sp(3, 1, 2), R(1, 3)) == sp(1, 1, 6));
  // through the origin at t / (t + s)
  CHECK(geodesic(s, sp(2, 1, 3), sp(5, 2, 3), R(1, 3)) == SpiderPoint());
  CHECK(geodesic(s, sp(2, 1, 3), sp(5, 2, 3), R(2, 3)) == sp(5, 1, 3));
  CHECK(geodesic(s, sp(4, 1, 5), sp(4, 3, 5), R(1, 2)) == sp(4, 2, 5));
  CHECK(geodesic(s, sp(4, 1, 5), sp(4, 1, 5), R(1, 2)) == sp(4, 1, 5));
  CHECK_THROWS_AS(geodesic(s, sp(1, 1, 2), sp(2, 1, 2), R(6, 5)), DomainError);
  CHECK_THROWS_AS(geodesic(s, sp(1, 1, 2), sp(2, 1, 2), R(-1, 5)), DomainError);
  CHECK(s.breakpoints(sp(2, 1, 3), sp(5, 2, 3)) == std::vector<R>{R(1, 3)});
  CHECK(s.breakpoints(sp(2, 1, 3), sp(2, 2, 3)).empty());
}

TEST_CASE("euclidean model") {
  const EuclideanSpace e(2);
  const auto x = e.point({0.0, 0.0});
  const auto y = e.point({3.0, 4.0});
  CHECK(distance(e, x, y) == doctest::Approx(5.0));
  const auto m = geodesic(e, x, y, 0.25);
  CHECK(m.coords[0] == doctest::Approx(0.75));
  CHECK(m.coords[1] == doctest::Approx(1.0));
  CHECK_THROWS_AS(e.point({1.0}), SpaceMismatch);
  CHECK_THROWS_AS(distance(e, x, EuclideanPoint{{1.0, 2.0, 3.0}}), SpaceMismatch);
  CHECK_THROWS_AS(e.point({INFINITY, 0.0}), DomainError);
  CHECK_THROWS_AS(EuclideanSpace(0), DomainError);
}

TEST_CASE("convex combinations") {
  const EuclideanSpace e(2);
  const std::vector<EuclideanPoint> tri{e.point({0, 0}), e.point({1, 0}), e.point({0, 1})};
  const std::vector<double> third(3, 1.0 / 3.0);
  const auto c = convex_combination(e, tri, third);
  CHECK(c.coords[0] == doctest::Approx(1.0 / 3.0));
  CHECK(c.coords[1] == doctest::Approx(1.0 / 3.0));

  const SpiderSpace s;
  CHECK(convex_combination(s, {sp(1, 1, 2), sp(3, 1, 2)}, {R(2, 3), R(1, 3)}) == sp(1, 1, 6));
  CHECK(convex_combination(s, {sp(4, 1, 7)}, {R(1)}) == sp(4, 1, 7));

  CHECK_THROWS_AS(convex_combination(s, {sp(1, 1, 2), sp(3, 1, 2)}, {R(1, 2), R(1, 3)}), DomainError);
  CHECK_THROWS_AS(convex_combination(s, {sp(1, 1, 2), sp(3, 1, 2)}, {R(1), R(0)}), DomainError);
  CHECK_THROWS_AS(convex_combination(s, {sp(1, 1, 2)}, {R(1, 2), R(1, 2)}), DomainError);
  CHECK_THROWS_AS(convex_combination(s, std::vector<SpiderPoint>{}, std::vector<R>{}), DomainError);

  const std::vector<SpiderPoint> pts{sp(1, 1, 2), sp(2, 1, 3), sp(3, 1, 2)};
  const std::vector<R> w{R(1, 2), R(0), R(1, 2)};
  CHECK(convex_combination_dropping_zeros(s, std::span<const SpiderPoint>(pts), std::span<const R>(w)) ==
        convex_combination(s, {sp(1, 1, 2), sp(3, 1, 2)}, {R(1, 2), R(1, 2)}));

  // two weights just under the tolerance are dropped together without breaking the sum
  const std::vector<EuclideanPoint> three{e.point({0, 0}), e.point({4, 0}), e.point({0, 4})};
  const std::vector<double> tiny{1.0 - 1.8e-9, 0.9e-9, 0.9e-9};
  const auto t = convex_combination_dropping_zeros(e, std::span<const EuclideanPoint>(three),
                                                   std::span<const double>(tiny));
  CHECK(t == e.point({0, 0}));
}

TEST_CASE("unrolled combination equals the nested recursion") {
  const SpiderSpace s;
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    std::vector<SpiderPoint> pts;
    std::vector<long> raw;
    long total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      pts.push_back(testkit::random_spider_point(rng));
      raw.push_back(std::uniform_int_distribution<long>(1, 9)(rng));
      total += raw.back();
    }
    std::vector<R> w;
    for (long r : raw) w.push_back(R(r, total));
    CHECK(convex_combination(s, pts, w) == nested_combination(s, pts, w));
  }
}

TEST_CASE("n-ary combination depends on order on the spider, not in the plane") {
  const SpiderSpace s;
  const std::vector<SpiderPoint> a{sp(1, 1, 1), sp(2, 1, 1), sp(3, 1, 1)};
  const std::vector<SpiderPoint> b{sp(3, 1, 1), sp(1, 1, 1), sp(2, 1, 1)};
  const std::vector<R> w(3, R(1, 3));
  CHECK(convex_combination(s, a, w) == sp(3, 1, 3));
  CHECK(convex_combination(s, b, w) == sp(2, 1, 3));

  const EuclideanSpace e(3);
  std::mt19937_64 rng(5);
  std::vector<EuclideanPoint> pts;
  for (int i = 0; i < 4; ++i) pts.push_back(testkit::random_point(rng, 3));
  const std::vector<double> wt{0.1, 0.2, 0.3, 0.4};
  const auto c1 = convex_combination(e, pts, wt);
  std::vector<EuclideanPoint> rev(pts.rbegin(), pts.rend());
  std::vector<double> wrev(wt.rbegin(), wt.rend());
  const auto c2 = convex_combination(e, rev, wrev);
  for (std::size_t i = 0; i < 3; ++i) CHECK(c1.coords[i] == doctest::Approx(c2.coords[i]).epsilon(1e-12));
}

TEST_CASE("spider geodesic properties on random inputs") {
  const SpiderSpace s;
  SpiderSampler gen(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto x = gen.point(), y = gen.point(), z = gen.point();
    const auto l = gen.unit(), m = gen.unit();
    const R dxy = s.distance(x, y);
    const auto gl = s.geodesic(x, y, l);
    const auto gm = s.geodesic(x, y, m);
    CHECK(s.geodesic(x, y, R(0)) == x);
    CHECK(s.geodesic(x, y, R(1)) == y);
    CHECK(s.distance(gl, gm) == abs(l - m) * dxy);
    // CN inequality
    CHECK(s.squared_distance(z, gl) <=
          (R(1) - l) * s.squared_distance(z, x) + l * s.squared_distance(z, y) - l * (R(1) - l) * dxy * dxy);
    // metric axioms
    CHECK(s.distance(x, y) == s.distance(y, x));
    CHECK(s.distance(x, z) <= s.distance(x, y) + s.distance(y, z));
    CHECK((s.distance(x, y) == R(0)) == (x == y));
    // relabelling the origin changes nothing
    const SpiderPoint o1(1, R(0)), o2(x.branch() + 3, R(0));
    CHECK(s.distance(o1, y) == s.distance(o2, y));
    CHECK(s.geodesic(o1, y, l) == s.geodesic(o2, y, l));
  }
}

TEST_CASE("jensen bound for n-ary combinations") {
  const SpiderSpace s;
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    std::vector<SpiderPoint> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(testkit::random_spider_point(rng));
    std::vector<R> w(n, R(1, static_cast<long>(n)));
    const auto x = testkit::random_spider_point(rng);
    const auto c = convex_combination(s, pts, w);
    R bound(0);
    for (std::size_t i = 0; i < n; ++i) bound += w[i] * s.distance(x, pts[i]);
    CHECK(s.distance(x, c) <= bound);
  }
}

TEST_CASE("euclidean geodesic properties on random inputs") {
  const EuclideanSpace e(3);
  EuclideanSampler gen(e, 9, 2.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto x = gen.point(), y = gen.point(), z = gen.point();
    const double l = gen.unit(), m = gen.unit();
    const double dxy = e.distance(x, y);
    CHECK(std::abs(e.distance(e.geodesic(x, y, l), e.geodesic(x, y, m)) - std::abs(l - m) * dxy) <= 1e-12);
    const double cn = (1 - l) * e.squared_distance(z, x) + l * e.squared_distance(z, y) -
                      l * (1 - l) * dxy * dxy - e.squared_distance(z, e.geodesic(x, y, l));
    CHECK(cn >= -1e-9);
    CHECK(e.distance(x, z) <= e.distance(x, y) + e.distance(y, z) + 1e-12);
  }
}
