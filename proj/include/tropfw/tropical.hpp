#pragma once

// Points of the tropical projective torus R^q / R·1 and the three tropical
// distances between them.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tropfw/errors.hpp"
#include "tropfw/scalar.hpp"

namespace tropfw {

enum class Metric { symmetric, min_plus, max_plus };

std::string_view to_string(Metric metric);
// Accepts "sym", "min", "max" (and the long forms "symmetric", "min_plus", "max_plus").
Metric parse_metric(std::string_view text);

// A representative of a point of the tropical projective torus: q finite
// coordinates. Two representatives denote the same point iff their difference
// is a constant vector.
template <class T>
class BasicPoint {
 public:
  BasicPoint() = default;
  explicit BasicPoint(std::vector<T> coords) : coords_(std::move(coords)) {
    if constexpr (!ScalarTraits<T>::exact) {
      for (const T& c : coords_) {
        if (!std::isfinite(c)) throw ArgumentError("tropical point coordinates must be finite");
      }
    }
  }
  BasicPoint(std::initializer_list<T> coords) : BasicPoint(std::vector<T>(coords)) {}

  std::size_t size() const noexcept { return coords_.size(); }
  const T& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<T>& coords() const noexcept { return coords_; }
  std::span<const T> span() const noexcept { return coords_; }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  friend bool operator==(const BasicPoint&, const BasicPoint&) = default;

 private:
  std::vector<T> coords_;
};

using TropicalPoint = BasicPoint<double>;
using ExactPoint = BasicPoint<Rational>;

template <class T>
std::vector<T> difference(const BasicPoint<T>& x, const BasicPoint<T>& y) {
  if (x.size() != y.size()) {
    throw DimensionError("tropical points have lengths " + std::to_string(x.size()) + " and " +
                         std::to_string(y.size()));
  }
  std::vector<T> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = y[i] - x[i];
  return d;
}

// max(e) - min(e); the tropical norm of a (possibly non-point) vector.
template <class T>
T tropical_norm(std::span<const T> e) {
  if (e.empty()) return T(0);
  auto [lo, hi] = std::minmax_element(e.begin(), e.end());
  return T(*hi - *lo);
}

template <class T>
T tropical_norm(const BasicPoint<T>& e) {
  return tropical_norm(e.span());
}

/// Symmetric tropical distance: max_i(y_i - x_i) - min_i(y_i - x_i).
template <class T>
T tropical_distance(const BasicPoint<T>& x, const BasicPoint<T>& y) {
  const std::vector<T> d = difference(x, y);
  return tropical_norm(std::span<const T>(d));
}

/// Min-plus asymmetric distance: sum_i(y_i - x_i) - q * min_i(y_i - x_i).
template <class T>
T min_plus_distance(const BasicPoint<T>& x, const BasicPoint<T>& y) {
  const std::vector<T> d = difference(x, y);
  if (d.empty()) return T(0);
  T sum = std::accumulate(d.begin(), d.end(), T(0));
  T lo = *std::min_element(d.begin(), d.end());
  return T(sum - T(static_cast<long>(d.size())) * lo);
}

/// Max-plus asymmetric distance: q * max_i(y_i - x_i) - sum_i(y_i - x_i).
template <class T>
T max_plus_distance(const BasicPoint<T>& x, const BasicPoint<T>& y) {
  const std::vector<T> d = difference(x, y);
  if (d.empty()) return T(0);
  T sum = std::accumulate(d.begin(), d.end(), T(0));
  T hi = *std::max_element(d.begin(), d.end());
  return T(T(static_cast<long>(d.size())) * hi - sum);
}

template <class T>
T distance(Metric metric, const BasicPoint<T>& x, const BasicPoint<T>& y) {
  switch (metric) {
    case Metric::symmetric: return tropical_distance(x, y);
    case Metric::min_plus: return min_plus_distance(x, y);
    case Metric::max_plus: return max_plus_distance(x, y);
  }
  throw ArgumentError("unknown metric");
}

// Representative whose last coordinate is zero.
template <class T>
BasicPoint<T> canonicalize(const BasicPoint<T>& x) {
  if (x.size() == 0) return x;
  std::vector<T> c(x.coords());
  const T last = c.back();
  for (T& v : c) v -= last;
  return BasicPoint<T>(std::move(c));
}

template <class T>
bool torus_equal(const BasicPoint<T>& x, const BasicPoint<T>& y) {
  return ScalarTraits<T>::equal(tropical_distance(x, y), T(0));
}

template <class T>
BasicPoint<T> translate(const BasicPoint<T>& x, const T& c) {
  std::vector<T> v(x.coords());
  for (T& e : v) e += c;
  return BasicPoint<T>(std::move(v));
}

// One classical piece of a tropical line segment: move the coordinates in
// `support` up by `gamma`.
template <class T>
struct SegmentStep {
  std::vector<int> support;  // sorted, 0-based
  T gamma;
};

template <class T>
using SegmentDecomposition = std::vector<SegmentStep<T>>;

/// Splits the tropical segment from y to x into classical pieces. Step i
/// raises U_i = indices where (x - y) attains one of its i largest distinct
/// values, by the gap between the i-th and (i+1)-th distinct value. Equal
/// values share one level.
template <class T>
SegmentDecomposition<T> segment_decomposition(const BasicPoint<T>& y, const BasicPoint<T>& x) {
  const std::vector<T> d = difference(y, x);
  std::vector<T> levels(d);
  std::sort(levels.begin(), levels.end(), [](const T& a, const T& b) { return a > b; });
  std::vector<T> distinct;
  for (const T& v : levels) {
    if (distinct.empty() || !ScalarTraits<T>::equal(distinct.back(), v)) distinct.push_back(v);
  }
  if (distinct.size() < 2) throw ArgumentError("segment_decomposition: x and y are the same torus point");

  SegmentDecomposition<T> steps;
  steps.reserve(distinct.size() - 1);
  for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
    SegmentStep<T> step;
    for (std::size_t a = 0; a < d.size(); ++a) {
      if (!ScalarTraits<T>::less(d[a], distinct[i])) step.support.push_back(static_cast<int>(a));
    }
    step.gamma = distinct[i] - distinct[i + 1];
    steps.push_back(std::move(step));
  }
  return steps;
}

/// Mean distance from x to the sample points.
template <class T>
T fermat_weber_objective(std::span<const BasicPoint<T>> samples, const BasicPoint<T>& x, Metric metric) {
  if (samples.empty()) throw ArgumentError("Fermat-Weber objective of an empty sample");
  T total(0);
  for (const auto& v : samples) total += distance(metric, x, v);
  return T(total / T(static_cast<long>(samples.size())));
}

template <class T>
T fermat_weber_objective(const std::vector<BasicPoint<T>>& samples, const BasicPoint<T>& x, Metric metric) {
  return fermat_weber_objective(std::span<const BasicPoint<T>>(samples), x, metric);
}

ExactPoint to_exact(const TropicalPoint& x);
TropicalPoint to_double_point(const ExactPoint& x);

}  // namespace tropfw
