#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hadamard/space.hpp"

namespace hadamard {

// The ordered pair (tail, head), written ->ab. ->aa is the zero bound vector at a and
// -(->ab) is ->ba.
template <class P>
struct BoundVector {
  P tail;
  P head;

  BoundVector reversed() const { return {head, tail}; }
  friend bool operator==(const BoundVector&, const BoundVector&) = default;
};

template <MetricSpace S>
using BoundVectorOf = BoundVector<PointOf<S>>;

// <->ab, ->cd> = 1/2 (d(a,d)^2 + d(b,c)^2 - d(a,c)^2 - d(b,d)^2)
template <MetricSpace S>
ScalarOf<S> qlin(const S& space, const BoundVectorOf<S>& ab, const BoundVectorOf<S>& cd) {
  using T = ScalarOf<S>;
  const auto& [a, b] = ab;
  const auto& [c, d] = cd;
  space.validate(a);
  space.validate(b);
  space.validate(c);
  space.validate(d);
  const T sum = space.squared_distance(a, d) + space.squared_distance(b, c) -
                space.squared_distance(a, c) - space.squared_distance(b, d);
  return sum / T(2);
}

// phi_{->xy}(z) = 1/2 (d(x,z)^2 - d(y,z)^2)
template <MetricSpace S>
ScalarOf<S> phi(const S& space, const BoundVectorOf<S>& xy, const PointOf<S>& z) {
  using T = ScalarOf<S>;
  space.validate(xy.tail);
  space.validate(xy.head);
  space.validate(z);
  return (space.squared_distance(xy.tail, z) - space.squared_distance(xy.head, z)) / T(2);
}

enum class QlinIdentity { PhiDecomposition, Antisymmetry, Telescoping, CauchySchwarz };

inline const char* name(QlinIdentity id) {
  switch (id) {
    case QlinIdentity::PhiDecomposition: return "phi-decomposition";
    case QlinIdentity::Antisymmetry: return "antisymmetry";
    case QlinIdentity::Telescoping: return "telescoping";
    case QlinIdentity::CauchySchwarz: return "cauchy-schwarz";
  }
  return "?";
}

template <MetricSpace S>
struct IdentityFailure {
  QlinIdentity identity;
  // a, b, c, d and the intermediate point x used by the telescoping check.
  std::vector<PointOf<S>> points;
  ScalarOf<S> lhs;
  ScalarOf<S> rhs;
};

template <MetricSpace S>
struct IdentityReport {
  std::size_t samples = 0;
  std::size_t failures[4] = {0, 0, 0, 0};
  std::optional<IdentityFailure<S>> first_failure;

  std::size_t failure_count(QlinIdentity id) const { return failures[static_cast<int>(id)]; }
  bool passed(QlinIdentity id) const { return failure_count(id) == 0; }
  bool passed() const { return !first_failure.has_value(); }
};

// Samples `count` quintuples (a, b, c, d, x) and checks
//   <ab,cd> = phi_cd(b) - phi_cd(a) = phi_ab(d) - phi_ab(c)
//   <ba,cd> = -<ab,cd>,  <ab,dc> = -<ab,cd>
//   <ab,cd> = <ax,cd> + <xb,cd>
//   <ab,cd> <= d(a,b) d(c,d)
// Exact models compare exactly, float models within the space tolerance scaled by the
// magnitude of the compared quantities.
template <MetricSpace S, class Sampler>
IdentityReport<S> check_qlin_identities(const S& space, Sampler& sampler, std::size_t count) {
  using T = ScalarOf<S>;
  IdentityReport<S> report;
  const T tol = space.tolerance();

  auto scaled = [&](const T& magnitude) {
    if constexpr (kIsExact<T>) {
      return tol;
    } else {
      return tol * (T(1) + abs(magnitude));
    }
  };

  for (std::size_t i = 0; i < count; ++i) {
    const auto a = sampler.point();
    const auto b = sampler.point();
    const auto c = sampler.point();
    const auto d = sampler.point();
    const auto x = sampler.point();
    ++report.samples;

    const BoundVectorOf<S> ab{a, b};
    const BoundVectorOf<S> cd{c, d};
    const T value = qlin(space, ab, cd);

    auto record = [&](QlinIdentity id, const T& lhs, const T& rhs) {
      ++report.failures[static_cast<int>(id)];
      if (!report.first_failure) {
        report.first_failure = IdentityFailure<S>{id, {a, b, c, d, x}, lhs, rhs};
      }
    };

    const T via_cd = phi(space, cd, b) - phi(space, cd, a);
    const T via_ab = phi(space, ab, d) - phi(space, ab, c);
    if (!near(value, via_cd, scaled(value)) || !near(value, via_ab, scaled(value))) {
      record(QlinIdentity::PhiDecomposition, value, near(value, via_cd, scaled(value)) ? via_ab : via_cd);
    }

    const T rev_first = qlin(space, ab.reversed(), cd);
    const T rev_second = qlin(space, ab, cd.reversed());
    if (!near(rev_first, -value, scaled(value)) || !near(rev_second, -value, scaled(value))) {
      record(QlinIdentity::Antisymmetry, value, near(rev_first, -value, scaled(value)) ? -rev_second : -rev_first);
    }

    const T split = qlin(space, {a, x}, cd) + qlin(space, {x, b}, cd);
    if (!near(value, split, scaled(value))) record(QlinIdentity::Telescoping, value, split);

    const T bound = space.distance(a, b) * space.distance(c, d);
    if (!leq(value, bound, scaled(bound))) record(QlinIdentity::CauchySchwarz, value, bound);
  }
  return report;
}

}  // namespace hadamard
