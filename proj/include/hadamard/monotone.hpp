#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hadamard/dual.hpp"

namespace hadamard {

template <MetricSpace S>
struct RelationPair {
  PointOf<S> point;
  DualElement<S> dual;

  friend bool operator==(const RelationPair&, const RelationPair&) = default;
};

// Finite relation M, a subset of X x X<>. Distinct pairs may share a point.
template <MetricSpace S>
struct Relation {
  std::vector<RelationPair<S>> pairs;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
};

template <MetricSpace S>
void validate(const S& space, const Relation<S>& m) {
  for (const auto& pair : m.pairs) {
    space.validate(pair.point);
    validate(space, pair.dual);
  }
}

// Dom(M), deduplicated by point equality, in order of first appearance.
template <MetricSpace S>
std::vector<PointOf<S>> domain_of(const Relation<S>& m) {
  std::vector<PointOf<S>> out;
  for (const auto& pair : m.pairs) {
    if (std::find(out.begin(), out.end(), pair.point) == out.end()) out.push_back(pair.point);
  }
  return out;
}

// Range(M), deduplicated by representation (not by D-equivalence).
template <MetricSpace S>
std::vector<DualElement<S>> range_of(const Relation<S>& m) {
  std::vector<DualElement<S>> out;
  for (const auto& pair : m.pairs) {
    if (std::find(out.begin(), out.end(), pair.dual) == out.end()) out.push_back(pair.dual);
  }
  return out;
}

// <x<> - y<>, ->yx>
template <MetricSpace S>
ScalarOf<S> monotonicity_margin(const S& space, const RelationPair<S>& x, const RelationPair<S>& y) {
  const BoundVectorOf<S> yx{y.point, x.point};
  return evaluate(space, x.dual, yx) - evaluate(space, y.dual, yx);
}

template <MetricSpace S>
struct MonotoneWitness {
  std::size_t first;
  std::size_t second;
  ScalarOf<S> margin;
};

template <MetricSpace S>
struct MonotoneReport {
  bool monotone = true;
  std::size_t pairs_checked = 0;
  std::optional<ScalarOf<S>> min_margin;  // over distinct pairs; empty for |M| < 2
  std::optional<MonotoneWitness<S>> witness;
};

// Checks <x<> - y<>, ->yx> >= -tol over all unordered pairs. The margin is symmetric in the
// two pairs, so each unordered pair is evaluated once.
template <MetricSpace S>
MonotoneReport<S> is_monotone(const S& space, const Relation<S>& m, const ScalarOf<S>& tol) {
  MonotoneReport<S> report;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const auto margin = monotonicity_margin(space, m.pairs[i], m.pairs[j]);
      ++report.pairs_checked;
      if (!report.min_margin || margin < *report.min_margin) report.min_margin = margin;
      if (margin < -tol && report.monotone) {
        report.monotone = false;
        report.witness = MonotoneWitness<S>{i, j, margin};
      }
    }
  }
  return report;
}

template <MetricSpace S>
MonotoneReport<S> is_monotone(const S& space, const Relation<S>& m) {
  return is_monotone(space, m, space.tolerance());
}

// ---------------------------------------------------------------------------------------------
// W-property

template <MetricSpace S>
struct WWitness {
  PointOf<S> base;
  std::size_t dual_index;  // into range_of(M)
  std::size_t x1_index;    // into domain_of(M)
  std::size_t x2_index;
  ScalarOf<S> lambda;
  ScalarOf<S> lhs;  // <x<>, ->p((1-l)x1 (+) l x2)>
  ScalarOf<S> rhs;  // (1-l)<x<>, ->px1> + l<x<>, ->px2>
};

template <MetricSpace S>
struct WReport {
  std::size_t checked = 0;
  std::size_t violation_count = 0;
  std::vector<WWitness<S>> witnesses;  // first `max_witnesses` violations in search order

  bool passed() const { return violation_count == 0; }
};

// Grid of k/n for k = 0..n.
template <Scalar T>
std::vector<T> uniform_grid(long n) {
  if (n <= 0) throw DomainError("grid resolution must be positive");
  std::vector<T> out;
  for (long k = 0; k <= n; ++k) out.push_back(ratio<T>(k, n));
  return out;
}

// All k/q in [0,1] with 1 <= q <= max_den, increasing, without repeats.
template <Scalar T>
std::vector<T> farey_grid(long max_den) {
  if (max_den <= 0) throw DomainError("grid denominator bound must be positive");
  std::vector<T> out;
  for (long q = 1; q <= max_den; ++q) {
    for (long k = 0; k <= q; ++k) {
      const T v = ratio<T>(k, q);
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Searches for a violation of
//   <x<>, ->p((1-l)x1 (+) l x2)> <= (1-l)<x<>, ->px1> + l<x<>, ->px2>
// over base points p, x<> in Range(M), ordered (x1, x2) in Dom(M)^2 and l in the grid, the grid
// being extended by the geodesic breakpoints of each (x1, x2). A pass means no violation was
// found on this finite search space, not a proof of the property.
template <GeodesicSpace S>
WReport<S> check_w_property(const S& space, const Relation<S>& m,
                            const std::vector<PointOf<S>>& base_points,
                            const std::vector<ScalarOf<S>>& lambda_grid,
                            std::size_t max_witnesses = std::numeric_limits<std::size_t>::max()) {
  using T = ScalarOf<S>;
  for (const T& l : lambda_grid) require_unit_interval(l, "lambda grid value");
  validate(space, m);
  const auto dom = domain_of(m);
  const auto range = range_of(m);
  const T tol = space.tolerance();

  WReport<S> report;
  for (const auto& p : base_points) {
    space.validate(p);
    for (std::size_t r = 0; r < range.size(); ++r) {
      const auto& dual = range[r];
      std::vector<T> at_domain;
      at_domain.reserve(dom.size());
      for (const auto& x : dom) at_domain.push_back(evaluate(space, dual, {p, x}));

      for (std::size_t i = 0; i < dom.size(); ++i) {
        for (std::size_t j = 0; j < dom.size(); ++j) {
          std::vector<T> grid = lambda_grid;
          for (const T& b : geodesic_breakpoints(space, dom[i], dom[j])) {
            if (std::find(grid.begin(), grid.end(), b) == grid.end()) grid.push_back(b);
          }
          for (const T& l : grid) {
            const auto w = space.geodesic(dom[i], dom[j], l);
            const T lhs = evaluate(space, dual, {p, w});
            const T rhs = (T(1) - l) * at_domain[i] + l * at_domain[j];
            ++report.checked;
            if (!leq(lhs, rhs, tol * (T(1) + abs(rhs)))) {
              ++report.violation_count;
              if (report.witnesses.size() < max_witnesses) {
                report.witnesses.push_back(WWitness<S>{p, r, i, j, l, lhs, rhs});
              }
            }
          }
        }
      }
    }
  }
  return report;
}

template <MetricSpace S>
struct WnViolation {
  std::size_t dual_index;
  ScalarOf<S> lhs;  // <x<>, ->q((+) l_i x_i)>
  ScalarOf<S> rhs;  // sum_i l_i <x<>, ->q x_i>
};

template <MetricSpace S>
struct WnReport {
  PointOf<S> combination;
  std::size_t checked = 0;
  std::vector<WnViolation<S>> violations;

  bool passed() const { return violations.empty(); }
};

// n-ary form of the W-property inequality at base point q for the points
// Dom(M)[point_indices[k]] with weights `weights` (simplex weights, ordered).
template <GeodesicSpace S>
WnReport<S> check_wn(const S& space, const Relation<S>& m, const PointOf<S>& q,
                     const std::vector<std::size_t>& point_indices,
                     const std::vector<ScalarOf<S>>& weights) {
  using T = ScalarOf<S>;
  const auto dom = domain_of(m);
  const auto range = range_of(m);
  std::vector<PointOf<S>> points;
  for (std::size_t idx : point_indices) {
    if (idx >= dom.size()) throw DomainError("domain index " + std::to_string(idx) + " out of range");
    points.push_back(dom[idx]);
  }
  WnReport<S> report{convex_combination(space, points, weights)};
  const T tol = space.tolerance();
  for (std::size_t r = 0; r < range.size(); ++r) {
    const T lhs = evaluate(space, range[r], {q, report.combination});
    T rhs(0);
    for (std::size_t k = 0; k < points.size(); ++k) {
      rhs += weights[k] * evaluate(space, range[r], {q, points[k]});
    }
    ++report.checked;
    if (!leq(lhs, rhs, tol * (T(1) + abs(rhs)))) report.violations.push_back({r, lhs, rhs});
  }
  return report;
}

// ---------------------------------------------------------------------------------------------
// Support functions and Theta

// Finitely supported probability weights over the pairs of a relation. Ordered: the order
// fixes the nesting of the n-ary convex combination alpha(eta).
template <MetricSpace S>
struct SupportFunction {
  struct Entry {
    std::size_t index;  // into Relation::pairs
    ScalarOf<S> weight;
  };
  std::vector<Entry> entries;

  static SupportFunction delta(std::size_t index) { return {{Entry{index, ScalarOf<S>(1)}}}; }
};

template <MetricSpace S>
void validate(const S& space, const Relation<S>& m, const SupportFunction<S>& eta) {
  using T = ScalarOf<S>;
  if (eta.entries.empty()) throw DomainError("support function with empty support");
  T sum(0);
  for (std::size_t k = 0; k < eta.entries.size(); ++k) {
    const auto& e = eta.entries[k];
    if (e.index >= m.size()) {
      throw DomainError("support index " + std::to_string(e.index) + " outside the relation");
    }
    for (std::size_t l = 0; l < k; ++l) {
      if (eta.entries[l].index == e.index) throw DomainError("repeated support index");
    }
    if (!(e.weight > T(0))) throw DomainError("support weight " + to_string(e.weight) + " not positive");
    sum += e.weight;
  }
  if (!near(sum, T(1), space.tolerance())) {
    throw DomainError("support weights sum to " + to_string(sum) + ", not 1");
  }
}

template <MetricSpace S>
struct ThetaReport {
  PointOf<S> alpha;      // (+) l_i x_i
  DualElement<S> beta;   // sum l_i x_i<>
  ScalarOf<S> theta;     // theta_p = sum l_i <x_i<>, ->p x_i>
  ScalarOf<S> rhs;       // <beta, ->p alpha>
  bool member = false;   // theta >= rhs (- tol)

  ScalarOf<S> gap() const { return theta - rhs; }
};

template <GeodesicSpace S>
ThetaReport<S> theta_evaluate(const S& space, const Relation<S>& m, const SupportFunction<S>& eta,
                              const PointOf<S>& p) {
  using T = ScalarOf<S>;
  validate(space, m, eta);
  space.validate(p);
  std::vector<PointOf<S>> points;
  std::vector<T> weights;
  DualElement<S> beta;
  T theta(0);
  for (const auto& e : eta.entries) {
    const auto& pair = m.pairs[e.index];
    points.push_back(pair.point);
    weights.push_back(e.weight);
    beta = add(beta, scale(e.weight, pair.dual));
    theta += e.weight * evaluate(space, pair.dual, {p, pair.point});
  }
  auto alpha = convex_combination(space, points, weights);
  const T rhs = evaluate(space, beta, {p, alpha});
  const T tol = space.tolerance();
  const bool member = leq(rhs, theta, tol * (T(1) + abs(theta)));
  return ThetaReport<S>{std::move(alpha), std::move(beta), theta, rhs, member};
}

template <MetricSpace S>
struct IndependenceReport {
  std::vector<ThetaReport<S>> per_base;
  bool consistent = true;  // all membership flags agree
};

template <GeodesicSpace S>
IndependenceReport<S> check_theta_p_independence(const S& space, const Relation<S>& m,
                                                 const SupportFunction<S>& eta,
                                                 const std::vector<PointOf<S>>& base_points) {
  if (base_points.size() < 2) throw DomainError("independence check needs at least two base points");
  IndependenceReport<S> report;
  for (const auto& p : base_points) {
    report.per_base.push_back(theta_evaluate(space, m, eta, p));
    if (report.per_base.back().member != report.per_base.front().member) report.consistent = false;
  }
  return report;
}

// Random support function: support size uniform in [1, min(5, |M|)], distinct indices in random
// order, weights from normalised exponentials. Exact scalars are snapped to k/64.
template <MetricSpace S>
SupportFunction<S> sample_support_function(std::mt19937_64& rng, std::size_t relation_size,
                                           std::size_t max_support = 5) {
  using T = ScalarOf<S>;
  if (relation_size == 0) throw DomainError("cannot sample a support function over an empty relation");
  const std::size_t cap = std::min(max_support, relation_size);
  const std::size_t k = std::uniform_int_distribution<std::size_t>(1, cap)(rng);

  std::vector<std::size_t> indices(relation_size);
  for (std::size_t i = 0; i < relation_size; ++i) indices[i] = i;
  std::shuffle(indices.begin(), indices.end(), rng);
  indices.resize(k);

  std::exponential_distribution<double> expo(1.0);
  std::vector<double> raw(k);
  double total = 0.0;
  for (auto& r : raw) total += (r = expo(rng));

  SupportFunction<S> eta;
  if constexpr (kIsExact<T>) {
    constexpr long kDen = 64;
    const long spare = kDen - static_cast<long>(k);  // every entry gets at least 1/64
    std::vector<long> nums(k, 1);
    long used = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const long extra = static_cast<long>(raw[i] / total * static_cast<double>(spare));
      nums[i] += extra;
      used += extra;
    }
    nums[0] += spare - used;
    for (std::size_t i = 0; i < k; ++i) eta.entries.push_back({indices[i], Rational(nums[i], kDen)});
  } else {
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double w = i + 1 == k ? 1.0 - acc : raw[i] / total;
      acc += w;
      eta.entries.push_back({indices[i], w});
    }
  }
  return eta;
}

// 1/2 delta_i + 1/2 delta_j
template <MetricSpace S>
SupportFunction<S> half_half(std::size_t i, std::size_t j) {
  const auto half = ratio<ScalarOf<S>>(1, 2);
  return {{{i, half}, {j, half}}};
}

enum class TheoremStatus {
  Consistent,       // every observation agrees with the characterization
  Violated,         // an instance contradicting the characterization was found
  WNotEstablished,  // precondition failed on the grid; nothing is asserted
};

inline const char* name(TheoremStatus s) {
  switch (s) {
    case TheoremStatus::Consistent: return "consistent";
    case TheoremStatus::Violated: return "violated";
    case TheoremStatus::WNotEstablished: return "W-property not established";
  }
  return "?";
}

template <MetricSpace S>
struct CharacterizationReport {
  TheoremStatus status = TheoremStatus::Consistent;
  bool monotone = true;
  std::size_t w_violations = 0;
  std::size_t samples = 0;
  std::size_t members = 0;
  std::size_t non_members = 0;
  std::optional<SupportFunction<S>> first_non_member;
  std::optional<ThetaReport<S>> first_non_member_report;
  std::string detail;
};

struct CharacterizationOptions {
  long lambda_resolution = 8;  // W precondition grid k/8
  std::size_t max_support = 5;
};

// Monotone <=> every support function lies in Theta, for relations with the W-property.
// Forward: when M is monotone each sampled eta must be a member. Converse: when M is not
// monotone the half/half support function on the violating pair must be a non-member, and any
// sampled non-member requires M to be non-monotone.
template <GeodesicSpace S>
CharacterizationReport<S> check_monotone_characterization(const S& space, const Relation<S>& m,
                                                          std::mt19937_64& rng, std::size_t count,
                                                          const PointOf<S>& p,
                                                          const CharacterizationOptions& opts = {}) {
  using T = ScalarOf<S>;
  CharacterizationReport<S> report;
  const auto mono = is_monotone(space, m);
  report.monotone = mono.monotone;

  const auto w = check_w_property(space, m, {p}, uniform_grid<T>(opts.lambda_resolution), 1);
  report.w_violations = w.violation_count;
  if (!w.passed()) {
    report.status = TheoremStatus::WNotEstablished;
    report.detail = "W-property not established on the lambda grid";
    return report;
  }
  if (m.empty()) return report;

  auto observe = [&](const SupportFunction<S>& eta) {
    auto theta = theta_evaluate(space, m, eta, p);
    ++report.samples;
    if (theta.member) {
      ++report.members;
    } else {
      ++report.non_members;
      if (!report.first_non_member) {
        report.first_non_member = eta;
        report.first_non_member_report = theta;
      }
    }
    return theta.member;
  };

  for (std::size_t i = 0; i < count; ++i) {
    const bool member = observe(sample_support_function<S>(rng, m.size(), opts.max_support));
    if (!member && mono.monotone) {
      report.status = TheoremStatus::Violated;
      report.detail = "monotone relation with a support function outside Theta";
    }
  }
  if (!mono.monotone) {
    const bool member = observe(half_half<S>(mono.witness->first, mono.witness->second));
    if (member) {
      report.status = TheoremStatus::Violated;
      report.detail = "non-monotone pair whose half/half support function lies in Theta";
    }
  }
  return report;
}

}  // namespace hadamard
