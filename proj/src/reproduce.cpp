#include "hadamard/reproduce.hpp"

namespace hadamard {

SpiderPoint spider_family_x(std::uint64_t n) { return SpiderPoint(n, Rational(1, 2)); }

SpiderPoint spider_family_y(std::uint64_t n) {
  return SpiderPoint(n, Rational(1, static_cast<long>(n)));
}

bool is_family_point(const SpiderPoint& p) {
  if (p.is_origin()) return false;
  return p.radius() == Rational(1, 2) || p.radius() == Rational(1, static_cast<long>(p.branch()));
}

Relation<SpiderSpace> spider_relation(std::uint64_t count) {
  Relation<SpiderSpace> m;
  for (std::uint64_t n = 1; n <= count; ++n) {
    m.pairs.push_back({spider_family_x(n), DualElement<SpiderSpace>::single(
                                               Rational(1), spider_family_y(n + 1), spider_family_y(n))});
  }
  return m;
}

Rational spider_table_formula(std::uint64_t n, std::uint64_t m) {
  const auto inv = [](std::uint64_t k) { return Rational(1, static_cast<long>(k)); };
  if (n == m) return Rational(0);
  if (n == m + 1) return inv(m + 1) + inv(n) + inv(m);
  if (n + 1 == m) return inv(n + 1) + inv(n) + inv(m);
  return inv(n) + inv(m);
}

std::string spider_text(const SpiderPoint& p) {
  return "[(" + std::to_string(p.branch()) + "," + p.radius().str() + ")]";
}

}  // namespace hadamard
