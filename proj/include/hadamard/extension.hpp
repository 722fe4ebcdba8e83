#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "hadamard/monotone.hpp"

namespace hadamard {

// co{c_1, ..., c_k} in the linear dual. Members are addressed by barycentric coordinates.
template <MetricSpace S>
struct ConvexHullSet {
  std::vector<DualElement<S>> generators;

  std::size_t size() const { return generators.size(); }
};

template <MetricSpace S>
void validate(const S& space, const ConvexHullSet<S>& hull) {
  if (hull.generators.empty()) throw DomainError("convex hull needs at least one generator");
  for (const auto& g : hull.generators) validate(space, g);
}

// mu must lie in the standard simplex of dimension k-1.
template <MetricSpace S>
void validate_coordinates(const S& space, const std::vector<ScalarOf<S>>& mu, std::size_t k) {
  using T = ScalarOf<S>;
  if (mu.size() != k) {
    throw DomainError("expected " + std::to_string(k) + " barycentric coordinates, got " +
                      std::to_string(mu.size()));
  }
  T sum(0);
  for (const T& m : mu) {
    if constexpr (!kIsExact<T>) {
      if (!std::isfinite(m)) throw DomainError("non-finite barycentric coordinate");
    }
    if (m < -space.tolerance()) throw DomainError("negative barycentric coordinate " + to_string(m));
    sum += m;
  }
  if (!near(sum, T(1), space.tolerance())) {
    throw DomainError("barycentric coordinates sum to " + to_string(sum) + ", not 1");
  }
}

// sum_i mu_i c_i, canonicalized.
template <MetricSpace S>
DualElement<S> realize(const S& space, const ConvexHullSet<S>& hull,
                       const std::vector<ScalarOf<S>>& mu) {
  validate_coordinates(space, mu, hull.size());
  DualElement<S> out;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (near_zero(mu[i], space.tolerance())) continue;
    out = add(out, scale(mu[i], hull.generators[i]));
  }
  return canonicalize(space, out);
}

// A continuous map from hull coordinates to points.
//
//   Constant     phi(mu) = point
//   AffineBlend  phi(mu) = (+)_i mu_i anchor_i, one anchor per generator
//   Table        values on the grid {0, 1/r, ..., 1}^(k-1) over mu_1..mu_{k-1}, interpolated
//                multilinearly along geodesics, one axis at a time. The table covers the
//                whole cube; entries outside the simplex only matter for interpolation.
template <MetricSpace S>
struct PhiMap {
  struct Constant {
    PointOf<S> point;
  };
  struct AffineBlend {
    std::vector<PointOf<S>> anchors;
  };
  struct Table {
    long resolution = 1;
    std::vector<PointOf<S>> values;  // axis 0 varies fastest
  };

  std::variant<Constant, AffineBlend, Table> rule;

  static PhiMap constant(PointOf<S> p) { return PhiMap{Constant{std::move(p)}}; }
  static PhiMap affine(std::vector<PointOf<S>> anchors) {
    return PhiMap{AffineBlend{std::move(anchors)}};
  }
};

namespace detail {

inline std::size_t table_size(long resolution, std::size_t axes) {
  std::size_t n = 1;
  for (std::size_t d = 0; d < axes; ++d) n *= static_cast<std::size_t>(resolution + 1);
  return n;
}

}  // namespace detail

template <GeodesicSpace S>
void validate(const S& space, const PhiMap<S>& phi, std::size_t k) {
  std::visit(
      [&](const auto& rule) {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, typename PhiMap<S>::Constant>) {
          space.validate(rule.point);
        } else if constexpr (std::is_same_v<R, typename PhiMap<S>::AffineBlend>) {
          if (rule.anchors.size() != k) {
            throw DomainError("affine phi has " + std::to_string(rule.anchors.size()) +
                              " anchors for " + std::to_string(k) + " generators");
          }
          for (const auto& a : rule.anchors) space.validate(a);
        } else {
          if (rule.resolution < 1) throw DomainError("phi table resolution must be >= 1");
          const std::size_t want = detail::table_size(rule.resolution, k - 1);
          if (rule.values.size() != want) {
            throw DomainError("phi table has " + std::to_string(rule.values.size()) +
                              " values, expected " + std::to_string(want));
          }
          for (const auto& v : rule.values) space.validate(v);
        }
      },
      phi.rule);
}

template <GeodesicSpace S>
PointOf<S> evaluate_phi(const S& space, const PhiMap<S>& phi, const std::vector<ScalarOf<S>>& mu) {
  using T = ScalarOf<S>;
  return std::visit(
      [&](const auto& rule) -> PointOf<S> {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, typename PhiMap<S>::Constant>) {
          return rule.point;
        } else if constexpr (std::is_same_v<R, typename PhiMap<S>::AffineBlend>) {
          return convex_combination_dropping_zeros(space, std::span<const PointOf<S>>(rule.anchors),
                                                   std::span<const T>(mu));
        } else {
          const std::size_t axes = mu.size() - 1;
          const long r = rule.resolution;
          std::vector<long> cell(axes);
          std::vector<T> frac(axes);
          for (std::size_t d = 0; d < axes; ++d) {
            T u = mu[d] * T(r);
            long c = floor_long(u);
            if (c < 0) c = 0;
            if (c > r - 1) c = r - 1;
            cell[d] = c;
            frac[d] = u - T(c);
            if (frac[d] < T(0)) frac[d] = T(0);
            if (frac[d] > T(1)) frac[d] = T(1);
          }
          std::vector<PointOf<S>> corners;
          corners.reserve(std::size_t{1} << axes);
          for (std::size_t mask = 0; mask < (std::size_t{1} << axes); ++mask) {
            std::size_t index = 0;
            std::size_t stride = 1;
            for (std::size_t d = 0; d < axes; ++d) {
              index += static_cast<std::size_t>(cell[d] + ((mask >> d) & 1)) * stride;
              stride *= static_cast<std::size_t>(r + 1);
            }
            corners.push_back(rule.values[index]);
          }
          for (std::size_t d = 0; d < axes; ++d) {
            std::vector<PointOf<S>> next;
            next.reserve(corners.size() / 2);
            for (std::size_t m = 0; m < corners.size() / 2; ++m) {
              next.push_back(space.geodesic(corners[2 * m], corners[2 * m + 1], frac[d]));
            }
            corners = std::move(next);
          }
          return corners.front();
        }
      },
      phi.rule);
}

// min over (y, y<>) in M of <z<> - y<>, ->y phi(mu)> with z<> = sum mu_i c_i.
// An empty M imposes no constraint: the result is empty, standing for +infinity.
template <GeodesicSpace S>
std::optional<ScalarOf<S>> violation_margin(const S& space, const Relation<S>& m,
                                            const ConvexHullSet<S>& hull,
                                            const std::vector<ScalarOf<S>>& mu,
                                            const PhiMap<S>& phi) {
  const auto z = realize(space, hull, mu);
  const auto x = evaluate_phi(space, phi, mu);
  std::optional<ScalarOf<S>> best;
  for (const auto& pair : m.pairs) {
    const BoundVectorOf<S> yx{pair.point, x};
    const auto margin = evaluate(space, z, yx) - evaluate(space, pair.dual, yx);
    if (!best || margin < *best) best = margin;
  }
  return best;
}

// a strictly better than b, treating empty as +infinity
template <Scalar T>
bool margin_better(const std::optional<T>& a, const std::optional<T>& b) {
  if (!a) return b.has_value();
  if (!b) return false;
  return *a > *b;
}

// All mu with mu_i = n_i / resolution, in lexicographically decreasing order of (n_1, ..., n_k),
// so the first entry is the first vertex.
template <Scalar T>
std::vector<std::vector<T>> simplex_grid(std::size_t k, long resolution) {
  if (k == 0) throw DomainError("simplex grid needs dimension >= 1");
  if (resolution < 1) throw DomainError("simplex grid resolution must be >= 1");
  std::vector<std::vector<T>> out;
  std::vector<long> counts(k, 0);
  auto rec = [&](auto& self, std::size_t i, long left) -> void {
    if (i + 1 == k) {
      counts[i] = left;
      std::vector<T> mu;
      mu.reserve(k);
      for (long c : counts) mu.push_back(ratio<T>(c, resolution));
      out.push_back(std::move(mu));
      return;
    }
    for (long c = left; c >= 0; --c) {
      counts[i] = c;
      self(self, i + 1, left - c);
    }
  };
  rec(rec, 0, resolution);
  return out;
}

enum class ExtensionStatus { Success, SearchInconclusive };

inline const char* name(ExtensionStatus s) {
  return s == ExtensionStatus::Success ? "success" : "search-inconclusive";
}

struct ExtensionOptions {
  double eps = 1e-6;  // converted to the scalar type; exact spaces accept 0
  long grid_depth = 4;
  long refine_steps = 64;
  long w_lambda_resolution = 8;
};

template <MetricSpace S>
struct ExtensionResult {
  ExtensionStatus status = ExtensionStatus::SearchInconclusive;
  DualElement<S> z_dual;
  PointOf<S> point;  // phi(coordinates)
  std::vector<ScalarOf<S>> coordinates;
  std::optional<ScalarOf<S>> margin;  // empty: M is empty
  std::size_t iterations = 0;         // margin evaluations
  std::vector<ScalarOf<S>> grid_best_coordinates;
  std::optional<ScalarOf<S>> grid_best_margin;
  bool m_monotone = true;
  bool m_w_property = true;
  std::optional<bool> augmented_w_property;  // reported on success only

  bool success() const { return status == ExtensionStatus::Success; }
};

namespace detail {

template <GeodesicSpace S>
bool w_passes(const S& space, const Relation<S>& m, long resolution) {
  const auto dom = domain_of(m);
  if (dom.empty()) return true;
  return check_w_property(space, m, {dom.front()}, uniform_grid<ScalarOf<S>>(resolution), 0)
      .passed();
}

}  // namespace detail

// Maximin search for z<> in C with {(phi(z<>), z<>)} u M monotone up to eps.
//
// Stage 1 scans the simplex grid at resolution 2^-grid_depth and keeps the first best point.
// Stage 2 moves mass h between pairs of coordinates, starting at h = 2^-grid_depth and halving
// h whenever no move improves the margin, for at most refine_steps rounds (float scalars also
// stop once h < 2^-40). The search stops as
// soon as the margin reaches -eps. Failure is reported as SearchInconclusive, never as a
// counterexample: the preconditions (monotone M, W-property) are recorded alongside.
template <GeodesicSpace S>
ExtensionResult<S> find_extension_point(const S& space, const Relation<S>& m,
                                        const ConvexHullSet<S>& hull, const PhiMap<S>& phi,
                                        const ScalarOf<S>& eps, const ExtensionOptions& opts = {}) {
  using T = ScalarOf<S>;
  if constexpr (kIsExact<T>) {
    if (eps < T(0)) throw DomainError("eps must be >= 0");
  } else {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("eps must be finite and > 0");
  }
  if (opts.grid_depth < 0 || opts.grid_depth > 20) throw DomainError("grid depth must lie in [0,20]");
  if (opts.refine_steps < 0) throw DomainError("refine steps must be >= 0");
  validate(space, m);
  validate(space, hull);
  validate(space, phi, hull.size());

  ExtensionResult<S> result;
  result.m_monotone = is_monotone(space, m).monotone;
  result.m_w_property = detail::w_passes(space, m, opts.w_lambda_resolution);

  const auto good = [&](const std::optional<T>& margin) { return !margin || *margin >= -eps; };
  const auto measure = [&](const std::vector<T>& mu) {
    ++result.iterations;
    return violation_margin(space, m, hull, mu, phi);
  };

  const long resolution = 1L << opts.grid_depth;
  const auto grid = simplex_grid<T>(hull.size(), resolution);
  std::vector<T> best_mu = grid.front();
  std::optional<T> best = measure(best_mu);
  for (std::size_t g = 1; g < grid.size(); ++g) {
    auto margin = measure(grid[g]);
    if (margin_better(margin, best)) {
      best = std::move(margin);
      best_mu = grid[g];
    }
  }
  result.grid_best_coordinates = best_mu;
  result.grid_best_margin = best;

  T h = ratio<T>(1, resolution);
  for (long step = 0; step < opts.refine_steps && !good(best) && hull.size() > 1; ++step) {
    std::vector<T> round_mu;
    std::optional<T> round_best = best;
    for (std::size_t i = 0; i < hull.size(); ++i) {
      for (std::size_t j = 0; j < hull.size(); ++j) {
        if (i == j || best_mu[j] < h) continue;
        auto mu = best_mu;
        mu[i] += h;
        mu[j] -= h;
        auto margin = measure(mu);
        if (margin_better(margin, round_best)) {
          round_best = std::move(margin);
          round_mu = std::move(mu);
        }
      }
    }
    if (round_mu.empty()) {
      h = h / T(2);
      // coordinates are multiples of h; below 2^-40 doubles could no longer sum them exactly
      if constexpr (!kIsExact<T>) {
        if (h < std::ldexp(1.0, -40)) break;
      }
    } else {
      best = std::move(round_best);
      best_mu = std::move(round_mu);
    }
  }

  result.coordinates = best_mu;
  result.margin = best;
  result.z_dual = realize(space, hull, best_mu);
  result.point = evaluate_phi(space, phi, best_mu);
  if (good(best)) {
    result.status = ExtensionStatus::Success;
    Relation<S> augmented = m;
    augmented.pairs.push_back({result.point, result.z_dual});
    result.augmented_w_property = detail::w_passes(space, augmented, opts.w_lambda_resolution);
  }
  return result;
}

// Re-checks monotonicity of M u {(phi(coordinates), z_dual)} within eps.
template <GeodesicSpace S>
bool verify_extension(const S& space, const Relation<S>& m, const ExtensionResult<S>& result,
                      const PhiMap<S>& phi, const ScalarOf<S>& eps) {
  Relation<S> augmented = m;
  augmented.pairs.push_back({evaluate_phi(space, phi, result.coordinates), result.z_dual});
  return is_monotone(space, augmented, eps).monotone;
}

}  // namespace hadamard
