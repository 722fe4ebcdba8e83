#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hadamard/quasilin.hpp"

namespace hadamard {

// (1-l)d(z,x)^2 + l d(z,y)^2 - l(1-l)d(x,y)^2 - d(z,(1-l)x (+) l y)^2.
// Nonnegative in every CAT(0) space, identically zero exactly in flat ones.
template <GeodesicSpace S>
ScalarOf<S> cn_residual(const S& space, const PointOf<S>& z, const PointOf<S>& x,
                        const PointOf<S>& y, const ScalarOf<S>& lambda) {
  using T = ScalarOf<S>;
  const auto w = geodesic(space, x, y, lambda);
  space.validate(z);
  const T one(1);
  return (one - lambda) * space.squared_distance(z, x) + lambda * space.squared_distance(z, y) -
         lambda * (one - lambda) * space.squared_distance(x, y) - space.squared_distance(z, w);
}

// <->x((1-l)x (+) l y), ->ab> - l <->xy, ->ab>
template <GeodesicSpace S>
ScalarOf<S> projection_residual(const S& space, const PointOf<S>& x, const PointOf<S>& y,
                                const PointOf<S>& a, const PointOf<S>& b,
                                const ScalarOf<S>& lambda) {
  const auto w = geodesic(space, x, y, lambda);
  return qlin(space, {x, w}, {a, b}) - lambda * qlin(space, {x, y}, {a, b});
}

// (1-l) phi_pz(x) + l phi_pz(y) - phi_pz((1-l)x (+) l y): right side minus left side of the
// affine identity. Convexity of phi_pz is the statement that this is >= 0.
template <GeodesicSpace S>
ScalarOf<S> phi_affine_residual(const S& space, const PointOf<S>& p, const PointOf<S>& z,
                                const PointOf<S>& x, const PointOf<S>& y,
                                const ScalarOf<S>& lambda) {
  using T = ScalarOf<S>;
  const auto w = geodesic(space, x, y, lambda);
  const BoundVectorOf<S> pz{p, z};
  return (T(1) - lambda) * phi(space, pz, x) + lambda * phi(space, pz, y) - phi(space, pz, w);
}

enum class FlatCriterion {
  CnEquality,        // equality in the CN-inequality
  ProjectionScaling, // <x w, ab> = l <xy, ab>
  PhiAffine,         // phi_pz affine along geodesics
  PhiConvex,         // phi_pz convex along geodesics
};

inline const char* name(FlatCriterion c) {
  switch (c) {
    case FlatCriterion::CnEquality: return "cn-equality";
    case FlatCriterion::ProjectionScaling: return "projection-scaling";
    case FlatCriterion::PhiAffine: return "phi-affine";
    case FlatCriterion::PhiConvex: return "phi-convex";
  }
  return "?";
}

enum class FlatVerdict { FlatOnSamples, NonFlat };

inline const char* name(FlatVerdict v) {
  return v == FlatVerdict::FlatOnSamples ? "FlatOnSamples" : "NonFlat";
}

// Points of a flatness sample. The criteria read them as
//   cn:          z, x, y
//   projection:  x, y, a = z, b = p
//   phi:         p, z, x, y
template <MetricSpace S>
struct FlatSample {
  PointOf<S> x;
  PointOf<S> y;
  PointOf<S> z;
  PointOf<S> p;
  ScalarOf<S> lambda;
};

template <MetricSpace S>
struct FlatWitness {
  FlatCriterion criterion;
  FlatSample<S> sample;
  ScalarOf<S> residual;
};

template <MetricSpace S>
struct FlatnessVerdict {
  FlatVerdict verdict = FlatVerdict::FlatOnSamples;
  std::size_t samples = 0;
  std::optional<FlatWitness<S>> witness;
  // largest |residual| seen per criterion (cn, projection, phi)
  ScalarOf<S> max_abs_residual[3] = {ScalarOf<S>(0), ScalarOf<S>(0), ScalarOf<S>(0)};
};

template <GeodesicSpace S>
ScalarOf<S> flat_residual(const S& space, FlatCriterion c, const FlatSample<S>& s) {
  switch (c) {
    case FlatCriterion::CnEquality:
      return cn_residual(space, s.z, s.x, s.y, s.lambda);
    case FlatCriterion::ProjectionScaling:
      return projection_residual(space, s.x, s.y, s.z, s.p, s.lambda);
    case FlatCriterion::PhiAffine:
    case FlatCriterion::PhiConvex:
      return phi_affine_residual(space, s.p, s.z, s.x, s.y, s.lambda);
  }
  return ScalarOf<S>(0);
}

template <GeodesicSpace S>
bool criterion_fires(const S& space, FlatCriterion c, const ScalarOf<S>& residual,
                     const ScalarOf<S>& tol) {
  (void)space;
  if (c == FlatCriterion::PhiConvex) return residual < -tol;
  return !near_zero(residual, tol);
}

// Low-denominator parameters tried, in order, when shrinking a witness.
template <Scalar T>
std::vector<T> simple_parameters() {
  std::vector<T> out;
  for (long den = 2; den <= 6; ++den) {
    for (long num = 1; num < den; ++num) {
      bool reduced = true;
      for (long g = 2; g <= num; ++g) reduced = reduced && !(num % g == 0 && den % g == 0);
      if (reduced) out.push_back(ratio<T>(num, den));
    }
  }
  return out;
}

// Replaces witness points by the model's simpler candidates (and lambda by a low-denominator
// value) as long as the criterion keeps firing.
template <GeodesicSpace S>
FlatWitness<S> minimize_witness(const S& space, FlatWitness<S> w, const ScalarOf<S>& tol) {
  using T = ScalarOf<S>;
  auto try_replace = [&](auto member, const auto& candidate) {
    FlatSample<S> trial = w.sample;
    trial.*member = candidate;
    const T r = flat_residual(space, w.criterion, trial);
    if (criterion_fires(space, w.criterion, r, tol)) {
      w.sample = trial;
      w.residual = r;
      return true;
    }
    return false;
  };
  if constexpr (requires(const PointOf<S>& q) { space.simpler_points(q); }) {
    for (auto member : {&FlatSample<S>::x, &FlatSample<S>::y, &FlatSample<S>::z, &FlatSample<S>::p}) {
      for (const auto& candidate : space.simpler_points(w.sample.*member)) {
        if (candidate == w.sample.*member || try_replace(member, candidate)) break;
      }
    }
  }
  for (const T& l : simple_parameters<T>()) {
    if (l == w.sample.lambda || try_replace(&FlatSample<S>::lambda, l)) break;
  }
  return w;
}

// Runs the cn, projection and phi (convex, then affine) criteria on `count` samples. The first
// firing criterion gives a NonFlat verdict with a minimised witness; FlatOnSamples only says no
// sample distinguished the space from a flat one.
template <GeodesicSpace S, class Sampler>
FlatnessVerdict<S> classify_flat(const S& space, Sampler& sampler, std::size_t count,
                                 const ScalarOf<S>& tol) {
  if (count == 0) throw DomainError("classify_flat needs at least one sample");
  FlatnessVerdict<S> out;
  constexpr FlatCriterion kOrder[] = {FlatCriterion::CnEquality, FlatCriterion::ProjectionScaling,
                                      FlatCriterion::PhiConvex, FlatCriterion::PhiAffine};
  for (std::size_t i = 0; i < count; ++i) {
    FlatSample<S> s{sampler.point(), sampler.point(), sampler.point(), sampler.point(),
                    sampler.unit()};
    ++out.samples;
    for (FlatCriterion c : kOrder) {
      const auto r = flat_residual(space, c, s);
      const int slot = c == FlatCriterion::PhiConvex ? 2 : static_cast<int>(c);
      if (abs(r) > out.max_abs_residual[slot]) out.max_abs_residual[slot] = abs(r);
      if (!out.witness && criterion_fires(space, c, r, tol)) {
        out.verdict = FlatVerdict::NonFlat;
        out.witness = minimize_witness(space, FlatWitness<S>{c, s, r}, tol);
      }
    }
  }
  return out;
}

template <GeodesicSpace S, class Sampler>
FlatnessVerdict<S> classify_flat(const S& space, Sampler& sampler, std::size_t count) {
  return classify_flat(space, sampler, count, space.tolerance());
}

}  // namespace hadamard
