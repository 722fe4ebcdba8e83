#pragma once

#include <cmath>
#include <concepts>
#include <string>
#include <type_traits>

#include "hadamard/errors.hpp"
#include "hadamard/rational.hpp"

namespace hadamard {

// Real quantities are either exact rationals or doubles checked against a tolerance.
template <class T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, double>;

template <Scalar T>
inline constexpr bool kIsExact = std::same_as<T, Rational>;

template <Scalar T>
T ratio(long num, long den) {
  if constexpr (kIsExact<T>) {
    return Rational(num, den);
  } else {
    if (den == 0) throw DomainError("ratio with zero denominator");
    return static_cast<double>(num) / static_cast<double>(den);
  }
}

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.to_double(); }

inline long floor_long(double x) { return static_cast<long>(std::floor(x)); }
inline long floor_long(const Rational& x) { return x.floor_long(); }

inline std::string to_string(const Rational& x) { return x.str(); }
std::string to_string(double x);

using std::abs;

// a <= b up to `tol` (tol is zero for exact scalars).
template <Scalar T>
bool leq(const T& a, const T& b, const T& tol) {
  return a <= b + tol;
}

template <Scalar T>
bool near(const T& a, const T& b, const T& tol) {
  return abs(a - b) <= tol;
}

template <Scalar T>
bool near_zero(const T& a, const T& tol) {
  return abs(a) <= tol;
}

// Precondition check shared by geodesic(), cnResidual() and friends.
template <Scalar T>
void require_unit_interval(const T& lambda, const char* what) {
  if constexpr (!kIsExact<T>) {
    if (!std::isfinite(lambda)) throw DomainError(std::string(what) + " must be finite");
  }
  if (lambda < T(0) || lambda > T(1)) {
    throw DomainError(std::string(what) + " = " + to_string(lambda) + " outside [0,1]");
  }
}

}  // namespace hadamard
