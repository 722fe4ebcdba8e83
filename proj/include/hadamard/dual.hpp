#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "hadamard/quasilin.hpp"

namespace hadamard {

// weight * [->tail head]; the coefficient alpha_i and the scale t_i are folded into one weight.
template <MetricSpace S>
struct DualTerm {
  ScalarOf<S> weight;
  PointOf<S> tail;
  PointOf<S> head;

  friend bool operator==(const DualTerm&, const DualTerm&) = default;
};

// Finite formal sum of classes [t ->ab]: an element of the linear dual space.
// The empty sum is the zero element. Equality is equality of representation.
template <MetricSpace S>
struct DualElement {
  std::vector<DualTerm<S>> terms;

  static DualElement single(ScalarOf<S> weight, PointOf<S> tail, PointOf<S> head) {
    return DualElement{{DualTerm<S>{std::move(weight), std::move(tail), std::move(head)}}};
  }

  bool empty() const { return terms.empty(); }
  friend bool operator==(const DualElement&, const DualElement&) = default;
};

template <MetricSpace S>
void validate(const S& space, const DualElement<S>& f) {
  for (const auto& term : f.terms) {
    space.validate(term.tail);
    space.validate(term.head);
  }
}

// <f, ->xy> = sum_i w_i <->a_i b_i, ->xy>
template <MetricSpace S>
ScalarOf<S> evaluate(const S& space, const DualElement<S>& f, const BoundVectorOf<S>& xy) {
  using T = ScalarOf<S>;
  T sum(0);
  for (const auto& term : f.terms) {
    sum += term.weight * qlin(space, BoundVectorOf<S>{term.tail, term.head}, xy);
  }
  return sum;
}

template <MetricSpace S>
DualElement<S> add(const DualElement<S>& f, const DualElement<S>& g) {
  DualElement<S> out = f;
  out.terms.insert(out.terms.end(), g.terms.begin(), g.terms.end());
  return out;
}

template <MetricSpace S>
DualElement<S> scale(const ScalarOf<S>& c, const DualElement<S>& f) {
  using T = ScalarOf<S>;
  DualElement<S> out;
  if (c == T(0)) return out;
  out.terms.reserve(f.terms.size());
  for (const auto& term : f.terms) out.terms.push_back({c * term.weight, term.tail, term.head});
  return out;
}

template <MetricSpace S>
DualElement<S> subtract(const DualElement<S>& f, const DualElement<S>& g) {
  using T = ScalarOf<S>;
  return add(f, scale(T(-1), g));
}

// Merges terms with identical (tail, head) and drops zero-weight and zero-vector terms.
// Order of first appearance is kept.
template <MetricSpace S>
DualElement<S> canonicalize(const S& space, const DualElement<S>& f) {
  DualElement<S> merged;
  for (const auto& term : f.terms) {
    if (term.tail == term.head) continue;
    auto it = std::find_if(merged.terms.begin(), merged.terms.end(), [&](const DualTerm<S>& m) {
      return m.tail == term.tail && m.head == term.head;
    });
    if (it == merged.terms.end()) {
      merged.terms.push_back(term);
    } else {
      it->weight += term.weight;
    }
  }
  std::erase_if(merged.terms,
                [&](const DualTerm<S>& t) { return near_zero(t.weight, space.tolerance()); });
  return merged;
}

// ||[t ->ab]|| = |t| d(a,b)
template <MetricSpace S>
ScalarOf<S> norm_single(const S& space, const ScalarOf<S>& t, const PointOf<S>& a,
                        const PointOf<S>& b) {
  return abs(t) * distance(space, a, b);
}

template <MetricSpace S>
struct NormBounds {
  ScalarOf<S> lower;
  ScalarOf<S> upper;
  std::size_t quadruples = 0;  // non-degenerate quadruples that entered the supremum
};

// Certified bracket for the dual norm
//   ||f|| = sup |<f,ab> - <f,cd>| / (d(a,b) + d(c,d)).
// lower: the quotient maximised over sampled quadruples, plus (a_i, b_i, b_j, a_j) built from
// the terms of f when `include_extremal` is set; upper: sum_i |w_i| d(a_i, b_i).
template <MetricSpace S, class Sampler>
NormBounds<S> norm_bounds(const S& space, const DualElement<S>& f, Sampler& sampler,
                          std::size_t count, bool include_extremal = true) {
  using T = ScalarOf<S>;
  if (count == 0) throw DomainError("norm_bounds needs at least one sample");
  validate(space, f);

  NormBounds<S> out{T(0), T(0), 0};
  for (const auto& term : f.terms) out.upper += norm_single(space, term.weight, term.tail, term.head);

  auto consider = [&](const PointOf<S>& a, const PointOf<S>& b, const PointOf<S>& c,
                      const PointOf<S>& d) {
    const T denom = space.distance(a, b) + space.distance(c, d);
    if (near_zero(denom, space.tolerance())) return;
    const T q = abs(evaluate(space, f, {a, b}) - evaluate(space, f, {c, d})) / denom;
    ++out.quadruples;
    if (q > out.lower) out.lower = q;
  };

  if (include_extremal) {
    for (const auto& ti : f.terms) {
      for (const auto& tj : f.terms) consider(ti.tail, ti.head, tj.head, tj.tail);
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    const auto a = sampler.point();
    const auto b = sampler.point();
    const auto c = sampler.point();
    const auto d = sampler.point();
    consider(a, b, c, d);
  }
  if constexpr (!kIsExact<T>) {
    // round-off only; a larger excess is left visible
    if (out.lower > out.upper && out.lower <= out.upper + space.tolerance() * (1.0 + out.upper)) {
      out.lower = out.upper;
    }
  }
  return out;
}

// Witness-limited test of D-equivalence: f ~ g iff <f, w> = <g, w> for every witness w.
// A `false` is a proof of inequivalence; `true` only covers the witnesses supplied.
template <MetricSpace S>
bool equivalent(const S& space, const DualElement<S>& f, const DualElement<S>& g,
                const std::vector<BoundVectorOf<S>>& witnesses, const ScalarOf<S>& tol) {
  if (witnesses.empty()) throw DomainError("equivalence check needs a nonempty witness set");
  for (const auto& w : witnesses) {
    if (!near(evaluate(space, f, w), evaluate(space, g, w), tol)) return false;
  }
  return true;
}

template <MetricSpace S>
bool equivalent(const S& space, const DualElement<S>& f, const DualElement<S>& g,
                const std::vector<BoundVectorOf<S>>& witnesses) {
  return equivalent(space, f, g, witnesses, space.tolerance());
}

// Witness bound vectors from every ordered pair of the given points.
template <MetricSpace S>
std::vector<BoundVectorOf<S>> witnesses_from_points(const std::vector<PointOf<S>>& points) {
  std::vector<BoundVectorOf<S>> out;
  for (const auto& x : points) {
    for (const auto& y : points) {
      if (!(x == y)) out.push_back({x, y});
    }
  }
  return out;
}

}  // namespace hadamard
