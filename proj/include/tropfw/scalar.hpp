#pragma once

#include <cmath>
#include <gmpxx.h>

namespace tropfw {

using Rational = mpq_class;

// Per-scalar comparison policy. Doubles compare at an absolute tolerance,
// rationals compare exactly.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr double tie_tolerance = 1e-9;

  static bool equal(double a, double b) { return std::abs(a - b) <= tie_tolerance; }
  static bool less(double a, double b) { return a < b - tie_tolerance; }
  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;

  static bool equal(const Rational& a, const Rational& b) { return a == b; }
  static bool less(const Rational& a, const Rational& b) { return a < b; }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational from_double(double x) { return Rational(x); }
};

template <class T>
double to_double(const T& x) {
  return ScalarTraits<T>::to_double(x);
}

}  // namespace tropfw
