#pragma once

// Tropical Fermat-Weber points by linear programming.

#include <cstddef>
#include <vector>

#include "tropfw/lp.hpp"
#include "tropfw/matroid.hpp"
#include "tropfw/tropical.hpp"

namespace tropfw {

template <class T>
struct BasicFwSolution {
  BasicPoint<T> point;  // canonical: last coordinate 0
  T objective{0};       // fermat_weber_objective(S, point, metric)
  Metric metric = Metric::symmetric;
  lp::Status status = lp::Status::optimal;
  std::size_t pivots = 0;
};

using FwSolution = BasicFwSolution<double>;
using ExactFwSolution = BasicFwSolution<Rational>;

/// One Fermat-Weber point of S under `metric`, with x_q = 0. For the
/// symmetric metric it is the coordinatewise least point of the Fermat-Weber
/// set in that chart, which is unique; for the asymmetric metrics it is the
/// LP vertex reached by the deterministic pivot sequence.
template <class T>
BasicFwSolution<T> fermat_weber(const std::vector<BasicPoint<T>>& samples, Metric metric,
                                const lp::SimplexOptions& options = {});

extern template FwSolution fermat_weber(const std::vector<TropicalPoint>&, Metric, const lp::SimplexOptions&);
extern template ExactFwSolution fermat_weber(const std::vector<ExactPoint>&, Metric, const lp::SimplexOptions&);

inline FwSolution fw_symmetric(const std::vector<TropicalPoint>& s) { return fermat_weber(s, Metric::symmetric); }
inline FwSolution fw_min_plus(const std::vector<TropicalPoint>& s) { return fermat_weber(s, Metric::min_plus); }
inline FwSolution fw_max_plus(const std::vector<TropicalPoint>& s) { return fermat_weber(s, Metric::max_plus); }

struct FwUltrametric {
  FwSolution raw;        // the Fermat-Weber point before projection
  FwSolution projected;  // pi_M(raw.point), objective under the same metric
};

/// Fermat-Weber point under `metric`, then the subdominant M-ultrametric of
/// it. When metric is symmetric and every sample lies in the fan, throws
/// Error unless the projection leaves the objective unchanged (relative
/// tolerance 1e-9).
FwUltrametric fw_m_ultrametric(const Matroid& m, const std::vector<TropicalPoint>& samples, Metric metric);

/// One-sided derivative of the symmetric objective at y in direction u
/// (a 0/1 vector, not constant). Per sample it is
/// [U meets argmax(y - v)] - [argmin(y - v) inside U], so n times the
/// result is an integer.
template <class T>
Rational directional_derivative(const std::vector<BasicPoint<T>>& samples, const BasicPoint<T>& y,
                                const std::vector<int>& u);

extern template Rational directional_derivative(const std::vector<TropicalPoint>&, const TropicalPoint&,
                                                const std::vector<int>&);
extern template Rational directional_derivative(const std::vector<ExactPoint>&, const ExactPoint&,
                                                const std::vector<int>&);

struct FwSetOracle {
  std::vector<TropicalPoint> points;  // canonical grid points judged optimal
  double lp_minimum = 0.0;
  double grid_minimum = 0.0;
  double slack = 0.0;  // 1e-9 + 2 * step
};

/// Grid approximation of the symmetric Fermat-Weber set for tiny samples
/// (q <= 4, n <= 6). Searches canonical points in the bounding box of S
/// widened by the d_tr diameter of S.
FwSetOracle fw_set_oracle(const std::vector<TropicalPoint>& samples, double step);

/// d_tr(theta_S, theta_{S+eps}) / sum_j ||eps_j||_tr with theta the
/// symmetric LP solutions.
double hausdorff_shift(const std::vector<TropicalPoint>& samples, const std::vector<std::vector<double>>& eps);

}  // namespace tropfw
