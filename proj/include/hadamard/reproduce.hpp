#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hadamard/monotone.hpp"
#include "hadamard/spider.hpp"

namespace hadamard {

// x_n = [(n, 1/2)], y_n = [(n, 1/n)]
SpiderPoint spider_family_x(std::uint64_t n);
SpiderPoint spider_family_y(std::uint64_t n);

// True for x_n and y_n (y_1 = [(1,1)] included).
bool is_family_point(const SpiderPoint& p);

// {(x_n, [->y_{n+1} y_n]) : 1 <= n <= count}
Relation<SpiderSpace> spider_relation(std::uint64_t count);

// Closed form of <u<> - v<>, ->vu> for u = pair n, v = pair m of spider_relation:
//   0                      n = m
//   1/(m+1) + 1/n + 1/m    n = m + 1
//   1/(n+1) + 1/n + 1/m    n = m - 1
//   1/n + 1/m              otherwise
Rational spider_table_formula(std::uint64_t n, std::uint64_t m);

struct ReproCheck {
  std::string name;
  std::string provenance;
  std::string expected;
  std::string actual;
  bool ok = false;
};

struct ReproReport {
  std::vector<ReproCheck> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.ok) return false;
    }
    return true;
  }
};

std::string spider_text(const SpiderPoint& p);

// Recomputes the spider numbers with exact arithmetic and compares them with their printed
// values. `space` is a template parameter so a deliberately broken model can be passed in.
template <GeodesicSpace S>
  requires std::same_as<PointOf<S>, SpiderPoint> && std::same_as<ScalarOf<S>, Rational>
ReproReport reproduce_spider(const S& space, std::uint64_t table_size = 10) {
  ReproReport report;
  const Rational half(1, 2);
  auto point_check = [&](std::string name, std::string provenance, const SpiderPoint& want,
                         const SpiderPoint& got) {
    report.checks.push_back(
        {std::move(name), std::move(provenance), spider_text(want), spider_text(got), want == got});
  };
  auto value_check = [&](std::string name, std::string provenance, const Rational& want,
                         const Rational& got) {
    report.checks.push_back({std::move(name), std::move(provenance), want.str(), got.str(), want == got});
  };

  const SpiderPoint x(2, half), y(1, half), a(3, Rational(1, 3)), b(2, half);
  const Rational lambda(1, 5);
  const SpiderPoint xl = space.geodesic(x, y, lambda);
  point_check("geodesic", "4/5 [(2,1/2)] (+) 1/5 [(1,1/2)]", SpiderPoint(2, Rational(3, 10)), xl);

  const Rational along = qlin(space, BoundVectorOf<S>{x, xl}, BoundVectorOf<S>{a, b});
  const Rational full = qlin(space, BoundVectorOf<S>{x, y}, BoundVectorOf<S>{a, b});
  value_check("qlin", "<->x(4/5 x (+) 1/5 y), ->ab>, a = [(3,1/3)], b = [(2,1/2)]",
              Rational(-1, 6), along);
  value_check("qlin", "<->xy, ->ab>", Rational(-1, 2), full);
  value_check("qlin-scaled", "1/5 <->xy, ->ab>", Rational(-1, 10), lambda * full);
  report.checks.push_back({"non-flat", "<->x(4/5 x (+) 1/5 y), ->ab> differs from 1/5 <->xy, ->ab>",
                           "different", along == lambda * full ? "equal" : "different",
                           along != lambda * full});

  const SpiderPoint p(1, Rational(1));
  const SpiderPoint x1 = spider_family_x(1), x3 = spider_family_x(3);
  const Rational third(1, 3);
  const SpiderPoint xt = space.geodesic(x1, x3, third);
  point_check("geodesic", "2/3 x_1 (+) 1/3 x_3", SpiderPoint(1, Rational(1, 6)), xt);

  const auto dual = DualElement<S>::single(Rational(1), spider_family_y(5), spider_family_y(4));
  const Rational lhs = evaluate(space, dual, {p, xt});
  const Rational rhs = (Rational(1) - third) * evaluate(space, dual, {p, x1}) +
                       third * evaluate(space, dual, {p, x3});
  value_check("w-lhs", "<[->y_5 y_4], ->p(2/3 x_1 (+) 1/3 x_3)>, p = [(1,1)]", Rational(1, 24), lhs);
  value_check("w-rhs", "2/3 <[->y_5 y_4], ->px_1> + 1/3 <[->y_5 y_4], ->px_3>", Rational(1, 40), rhs);
  report.checks.push_back({"w-violated", "convexity inequality fails for the spider relation",
                           "lhs > rhs", lhs > rhs ? "lhs > rhs" : "lhs <= rhs", lhs > rhs});

  Relation<S> m;
  for (const auto& pair : spider_relation(table_size).pairs) {
    DualElement<S> f;
    for (const auto& t : pair.dual.terms) f.terms.push_back({t.weight, t.tail, t.head});
    m.pairs.push_back({pair.point, std::move(f)});
  }
  std::size_t mismatches = 0;
  std::string first;
  for (std::uint64_t n = 1; n <= table_size; ++n) {
    for (std::uint64_t k = 1; k <= table_size; ++k) {
      const Rational got = monotonicity_margin(space, m.pairs[n - 1], m.pairs[k - 1]);
      const Rational want = spider_table_formula(n, k);
      if (got != want || got < Rational(0)) {
        if (mismatches++ == 0) {
          first = "n=" + std::to_string(n) + " m=" + std::to_string(k) + ": " + got.str() +
                  " vs " + want.str();
        }
      }
    }
  }
  const std::string cells = std::to_string(table_size * table_size);
  report.checks.push_back({"monotone-table",
                           "<u<> - v<>, ->vu> over the spider relation, 1 <= n,m <= " +
                               std::to_string(table_size),
                           cells + " cells match the case formulas and are >= 0",
                           mismatches == 0 ? cells + " cells match the case formulas and are >= 0"
                                           : std::to_string(mismatches) + " mismatches, first " + first,
                           mismatches == 0});
  return report;
}

}  // namespace hadamard
