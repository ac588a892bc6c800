#include "tropfw/fw_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tropfw/projection.hpp"

namespace tropfw {

namespace {

template <class T>
void check_samples(const std::vector<BasicPoint<T>>& samples) {
  if (samples.empty()) throw ArgumentError("Fermat-Weber point of an empty sample");
  const std::size_t q = samples.front().size();
  if (q < 2) throw DimensionError("Fermat-Weber points need dimension q >= 2");
  for (const auto& v : samples) {
    if (v.size() != q) throw DimensionError("samples have different lengths");
  }
}

// Variables: x_0..x_{q-2} (x_{q-1} = 0), then one or two blocks of n
// per-sample auxiliaries.
template <class T>
lp::LinearProgram<T> build_program(const std::vector<std::vector<T>>& v, int q, Metric metric) {
  const int n = static_cast<int>(v.size());
  const int free = q - 1;
  auto x_term = [&](int j, long coefficient, std::vector<lp::Term<T>>& terms) {
    if (j < free) terms.push_back({j, T(coefficient)});
  };

  switch (metric) {
    case Metric::symmetric: {
      // a_i >= max_j (v_ij - x_j),  b_i <= min_j (v_ij - x_j),  minimise sum a_i - b_i.
      lp::LinearProgram<T> prog(free + 2 * n);
      for (int i = 0; i < n; ++i) {
        prog.objective[free + i] = T(1);
        prog.objective[free + n + i] = T(-1);
      }
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < q; ++j) {
          std::vector<lp::Term<T>> terms{{free + i, T(1)}};
          x_term(j, 1, terms);
          prog.add_row(std::move(terms), v[i][j]);
        }
        for (int j = 0; j < q; ++j) {
          std::vector<lp::Term<T>> terms{{free + n + i, T(-1)}};
          x_term(j, -1, terms);
          prog.add_row(std::move(terms), T(-v[i][j]));
        }
      }
      return prog;
    }
    case Metric::min_plus: {
      // m_i <= v_ij - x_j,  minimise sum_i [sum_j (v_ij - x_j) - q m_i].
      lp::LinearProgram<T> prog(free + n);
      for (int j = 0; j < free; ++j) prog.objective[j] = T(-n);
      for (int i = 0; i < n; ++i) prog.objective[free + i] = T(-q);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < q; ++j) {
          std::vector<lp::Term<T>> terms{{free + i, T(-1)}};
          x_term(j, -1, terms);
          prog.add_row(std::move(terms), T(-v[i][j]));
        }
      }
      return prog;
    }
    case Metric::max_plus: {
      // M_i >= v_ij - x_j,  minimise sum_i [q M_i - sum_j (v_ij - x_j)].
      lp::LinearProgram<T> prog(free + n);
      for (int j = 0; j < free; ++j) prog.objective[j] = T(n);
      for (int i = 0; i < n; ++i) prog.objective[free + i] = T(q);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < q; ++j) {
          std::vector<lp::Term<T>> terms{{free + i, T(1)}};
          x_term(j, 1, terms);
          prog.add_row(std::move(terms), v[i][j]);
        }
      }
      return prog;
    }
  }
  throw ArgumentError("unknown metric");
}

}  // namespace

template <class T>
BasicFwSolution<T> fermat_weber(const std::vector<BasicPoint<T>>& samples, Metric metric,
                                const lp::SimplexOptions& options) {
  check_samples(samples);
  const int q = static_cast<int>(samples.front().size());

  // Distances depend on v - x only, so the data may be shifted by any vector
  // and, in floating point, rescaled to unit size.
  const std::vector<T>& shift = samples.front().coords();
  T scale(1);
  if constexpr (!ScalarTraits<T>::exact) {
    double largest = 0.0;
    for (const auto& v : samples) {
      for (int j = 0; j < q; ++j) largest = std::max(largest, std::abs(v[j] - shift[j]));
    }
    if (largest > 0.0) scale = largest;
  }
  std::vector<std::vector<T>> data(samples.size(), std::vector<T>(q));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (int j = 0; j < q; ++j) data[i][j] = T(T(samples[i][j] - shift[j]) / scale);
  }

  lp::LinearProgram<T> program = build_program(data, q, metric);
  lp::Result<T> result = lp::solve(program, options);
  if (result.status != lp::Status::optimal) {
    throw Error("Fermat-Weber LP ended with status " + std::string(lp::to_string(result.status)));
  }
  std::size_t pivots = result.pivots;
  if (metric == Metric::symmetric) {
    // The symmetric Fermat-Weber set is a polytrope, closed under coordinatewise
    // min in the chart x_q = 0. Select its least element: minimise sum_j x_j
    // over the optimal face.
    const int free = q - 1;
    // In floating point the face is widened only by the selection tolerance,
    // which keeps the objective within that much of the optimum.
    lp::SimplexOptions selection = options;
    T bound = result.objective;
    if constexpr (!ScalarTraits<T>::exact) {
      selection.tolerance = options.tolerance * 1e-3;
      bound += selection.tolerance;
    }
    std::vector<lp::Term<T>> optimal_face;
    for (int k = free; k < program.num_variables; ++k) {
      if (program.objective[k] != T(0)) optimal_face.push_back({k, T(-program.objective[k])});
    }
    program.add_row(std::move(optimal_face), T(-bound));
    std::fill(program.objective.begin(), program.objective.end(), T(0));
    for (int j = 0; j < free; ++j) program.objective[j] = T(1);
    result = lp::solve(program, selection);
    if (result.status != lp::Status::optimal) {
      throw Error("Fermat-Weber selection LP ended with status " + std::string(lp::to_string(result.status)));
    }
    pivots += result.pivots;
  }
  std::vector<T> x(q);
  for (int j = 0; j < q; ++j) {
    const T local = j < q - 1 ? result.solution[j] : T(0);
    x[j] = T(local * scale + shift[j]);
  }

  BasicFwSolution<T> out;
  out.point = canonicalize(BasicPoint<T>(std::move(x)));
  out.objective = fermat_weber_objective(samples, out.point, metric);
  out.metric = metric;
  out.status = result.status;
  out.pivots = pivots;
  return out;
}

template FwSolution fermat_weber(const std::vector<TropicalPoint>&, Metric, const lp::SimplexOptions&);
template ExactFwSolution fermat_weber(const std::vector<ExactPoint>&, Metric, const lp::SimplexOptions&);

FwUltrametric fw_m_ultrametric(const Matroid& m, const std::vector<TropicalPoint>& samples, Metric metric) {
  check_samples(samples);
  FwUltrametric out;
  out.raw = fermat_weber(samples, metric);
  out.projected.point = canonicalize(project_bergman(m, out.raw.point));
  out.projected.objective = fermat_weber_objective(samples, out.projected.point, metric);
  out.projected.metric = metric;
  out.projected.status = out.raw.status;
  out.projected.pivots = out.raw.pivots;

  if (metric == Metric::symmetric &&
      std::all_of(samples.begin(), samples.end(), [&](const TropicalPoint& v) { return is_m_ultrametric(m, v); })) {
    double magnitude = 1.0;
    for (const auto& v : samples) {
      for (double c : v) magnitude = std::max(magnitude, std::abs(c));
    }
    if (out.projected.objective - out.raw.objective > 1e-9 * magnitude) {
      throw Error("fw_m_ultrametric: projection increased the objective of an in-fan sample");
    }
  }
  return out;
}

template <class T>
Rational directional_derivative(const std::vector<BasicPoint<T>>& samples, const BasicPoint<T>& y,
                                const std::vector<int>& u) {
  check_samples(samples);
  const std::size_t q = y.size();
  if (u.size() != q || samples.front().size() != q) throw DimensionError("directional_derivative: length mismatch");
  bool has_zero = false;
  bool has_one = false;
  for (int b : u) {
    if (b != 0 && b != 1) throw ArgumentError("directional_derivative: u must be a 0/1 vector");
    (b ? has_one : has_zero) = true;
  }
  if (!has_zero || !has_one) throw ArgumentError("directional_derivative: u is constant");

  long total = 0;
  for (const auto& v : samples) {
    const std::vector<T> w = difference(v, y);  // y - v
    const T* hi = &w[0];
    const T* lo = &w[0];
    for (const T& c : w) {
      if (ScalarTraits<T>::less(*hi, c)) hi = &c;
      if (ScalarTraits<T>::less(c, *lo)) lo = &c;
    }
    bool meets_argmax = false;
    bool argmin_inside = true;
    for (std::size_t a = 0; a < q; ++a) {
      if (ScalarTraits<T>::equal(w[a], *hi) && u[a]) meets_argmax = true;
      if (ScalarTraits<T>::equal(w[a], *lo) && !u[a]) argmin_inside = false;
    }
    total += static_cast<long>(meets_argmax) - static_cast<long>(argmin_inside);
  }
  Rational out(total, static_cast<long>(samples.size()));
  out.canonicalize();
  return out;
}

template Rational directional_derivative(const std::vector<TropicalPoint>&, const TropicalPoint&,
                                         const std::vector<int>&);
template Rational directional_derivative(const std::vector<ExactPoint>&, const ExactPoint&, const std::vector<int>&);

FwSetOracle fw_set_oracle(const std::vector<TropicalPoint>& samples, double step) {
  check_samples(samples);
  const int q = static_cast<int>(samples.front().size());
  if (q > 4 || samples.size() > 6) throw CapacityError("fw_set_oracle: needs q <= 4 and n <= 6");
  if (!(step > 0.0)) throw ArgumentError("fw_set_oracle: grid step must be positive");

  std::vector<TropicalPoint> canon;
  for (const auto& v : samples) canon.push_back(canonicalize(v));
  double diameter = 0.0;
  for (const auto& a : canon) {
    for (const auto& b : canon) diameter = std::max(diameter, tropical_distance(a, b));
  }
  const int free = q - 1;
  std::vector<double> lo(free);
  std::vector<long> count(free);
  double total = 1.0;
  for (int j = 0; j < free; ++j) {
    double mn = canon.front()[j];
    double mx = mn;
    for (const auto& v : canon) {
      mn = std::min(mn, v[j]);
      mx = std::max(mx, v[j]);
    }
    lo[j] = mn - diameter;
    count[j] = static_cast<long>(std::floor((mx - mn + 2 * diameter) / step + 1e-9)) + 1;
    total *= static_cast<double>(count[j]);
  }
  if (total > 2e7) throw CapacityError("fw_set_oracle: grid has more than 2e7 points");

  FwSetOracle out;
  out.lp_minimum = fw_symmetric(samples).objective;
  out.slack = 1e-9 + 2.0 * step;
  out.grid_minimum = out.lp_minimum + out.slack + 1.0;
  std::vector<long> index(free, 0);
  std::vector<double> x(q, 0.0);
  for (;;) {
    for (int j = 0; j < free; ++j) x[j] = lo[j] + static_cast<double>(index[j]) * step;
    TropicalPoint point(x);
    const double f = fermat_weber_objective(samples, point, Metric::symmetric);
    out.grid_minimum = std::min(out.grid_minimum, f);
    if (f <= out.lp_minimum + out.slack) out.points.push_back(std::move(point));
    int j = 0;
    while (j < free && ++index[j] == count[j]) index[j++] = 0;
    if (j == free) break;
  }
  return out;
}

double hausdorff_shift(const std::vector<TropicalPoint>& samples, const std::vector<std::vector<double>>& eps) {
  check_samples(samples);
  if (eps.size() != samples.size()) throw DimensionError("hausdorff_shift: one perturbation per sample required");
  double total = 0.0;
  std::vector<TropicalPoint> moved;
  moved.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (eps[i].size() != samples[i].size()) throw DimensionError("hausdorff_shift: perturbation length mismatch");
    total += tropical_norm(std::span<const double>(eps[i]));
    std::vector<double> c(samples[i].coords());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] += eps[i][j];
    moved.emplace_back(std::move(c));
  }
  if (total <= 1e-15) throw DegenerateError("hausdorff_shift: perturbation has zero tropical norm");
  const TropicalPoint before = fw_symmetric(samples).point;
  const TropicalPoint after = fw_symmetric(moved).point;
  return tropical_distance(before, after) / total;
}

}  // namespace tropfw
