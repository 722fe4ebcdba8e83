#include <doctest.h>

#include "hadamard/dual.hpp"
#include "support.hpp"

using namespace hadamard;
using R = Rational;
using D = DualElement<SpiderSpace>;

namespace {
SpiderPoint sp(std::uint64_t b, long num, long den) { return SpiderPoint(b, R(num, den)); }
const SpiderPoint p11 = sp(1, 1, 1);
const SpiderPoint y5 = sp(5, 1, 5), y4 = sp(4, 1, 4);
}  // namespace

TEST_CASE("evaluation of spider dual elements") {
  const SpiderSpace s;
  const auto f = D::single(R(1), y5, y4);
  CHECK(evaluate(s, f, {p11, sp(1, 1, 6)}) == R(1, 24));
  CHECK(R(2, 3) * evaluate(s, f, {p11, sp(1, 1, 2)}) + R(1, 3) * evaluate(s, f, {p11, sp(3, 1, 2)}) ==
        R(1, 40));
  CHECK(evaluate(s, D{}, {p11, y5}) == R(0));
  CHECK(evaluate(s, add(f, f), {p11, sp(1, 1, 6)}) == R(1, 12));
  CHECK(scale(R(0), f).empty());
  CHECK(evaluate(s, add(f, D{}), {y4, p11}) == evaluate(s, f, {y4, p11}));
}

TEST_CASE("evaluation is linear") {
  const SpiderSpace s;
  std::mt19937_64 rng(8);
  for (int i = 0; i < 500; ++i) {
    const auto f = testkit::random_spider_dual(rng, 3);
    const auto g = testkit::random_spider_dual(rng, 3);
    const R c(std::uniform_int_distribution<long>(-7, 7)(rng), 3);
    const BoundVectorOf<SpiderSpace> v{testkit::random_spider_point(rng), testkit::random_spider_point(rng)};
    CHECK(evaluate(s, add(f, g), v) == evaluate(s, f, v) + evaluate(s, g, v));
    CHECK(evaluate(s, scale(c, f), v) == c * evaluate(s, f, v));
    CHECK(evaluate(s, subtract(f, f), v) == R(0));
    CHECK(evaluate(s, canonicalize(s, add(f, g)), v) == evaluate(s, add(f, g), v));
  }
}

TEST_CASE("single-term norms") {
  const SpiderSpace s;
  CHECK(norm_single(s, R(1), y5, y4) == R(9, 20));
  CHECK(norm_single(s, R(0), y5, y4) == R(0));
  CHECK(norm_single(s, R(-4), y5, y4) == R(2) * norm_single(s, R(-2), y5, y4));
  const EuclideanSpace e(2);
  CHECK(norm_single(e, 2.0, e.point({0, 0}), e.point({3, 4})) == doctest::Approx(10.0));
}

TEST_CASE("norm bounds bracket the norm") {
  const SpiderSpace s;
  SpiderSampler gen(4);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const R t(std::uniform_int_distribution<long>(-5, 5)(rng), 2);
    const auto a = gen.point(), b = gen.point();
    const auto nb = norm_bounds(s, D::single(t, a, b), gen, 50);
    CHECK(nb.lower <= nb.upper);
    CHECK(nb.upper == norm_single(s, t, a, b));
    CHECK(nb.lower == nb.upper);  // the (a,b,b,a) quadruple attains the supremum
  }
  const auto zero = norm_bounds(s, D{}, gen, 10);
  CHECK(zero.lower == R(0));
  CHECK(zero.upper == R(0));
  CHECK_THROWS_AS(norm_bounds(s, D{}, gen, 0), DomainError);
}

TEST_CASE("norm bounds of a cancelling sum") {
  const SpiderSpace s;
  SpiderSampler gen(6);
  const auto a = sp(2, 1, 3), b = sp(3, 3, 4);
  const auto f = add(D::single(R(1), a, b), scale(R(-1), D::single(R(1), a, b)));
  // the sum evaluates to zero everywhere
  for (int i = 0; i < 100; ++i) CHECK(evaluate(s, f, {gen.point(), gen.point()}) == R(0));
  const auto nb = norm_bounds(s, f, gen, 100);
  CHECK(nb.upper == R(2) * s.distance(a, b));
  CHECK(nb.lower == R(0));
  const auto c = canonicalize(s, f);
  CHECK(c.empty());
  const auto nc = norm_bounds(s, c, gen, 100);
  CHECK(nc.lower == R(0));
  CHECK(nc.upper == R(0));
}

TEST_CASE("canonical form merges identical terms only") {
  const SpiderSpace s;
  const auto a = sp(2, 1, 3), b = sp(3, 3, 4);
  D f{{{R(1), a, b}, {R(2), b, a}, {R(1, 2), a, b}, {R(5), a, a}, {R(0), b, p11}}};
  const auto c = canonicalize(s, f);
  REQUIRE(c.terms.size() == 2);
  CHECK(c.terms[0] == DualTerm<SpiderSpace>{R(3, 2), a, b});
  CHECK(c.terms[1] == DualTerm<SpiderSpace>{R(2), b, a});
}

TEST_CASE("witness-limited equivalence") {
  const SpiderSpace s;
  const auto a = sp(2, 1, 3), b = sp(3, 3, 4);
  const auto pts = std::vector<SpiderPoint>{a, b, p11, y4, y5, SpiderPoint()};
  const auto w = witnesses_from_points<SpiderSpace>(pts);
  const auto f = D::single(R(1), a, b);
  CHECK(equivalent(s, f, f, w));
  CHECK(equivalent(s, D::single(R(1), a, a), D::single(R(1), b, b), w));
  CHECK_FALSE(equivalent(s, f, D::single(R(2), a, b), {{a, b}}));
  CHECK(equivalent(s, D::single(R(-1), a, b), D::single(R(1), b, a), w));
  CHECK_THROWS_AS(equivalent(s, f, f, {}), DomainError);
}
