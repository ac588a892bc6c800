#include "tropfw/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "tropfw/errors.hpp"

namespace tropfw::lp {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

template <class T>
struct Tolerance;

template <>
struct Tolerance<double> {
  double eps;
  bool positive(double x) const { return x > eps; }
  bool nonzero(double x) const { return std::abs(x) > eps; }
  bool ratio_less(double a, double b) const { return a < b - eps; }
  bool ratio_equal(double a, double b) const { return std::abs(a - b) <= eps; }
};

template <>
struct Tolerance<Rational> {
  bool positive(const Rational& x) const { return sgn(x) > 0; }
  bool nonzero(const Rational& x) const { return sgn(x) != 0; }
  bool ratio_less(const Rational& a, const Rational& b) const { return a < b; }
  bool ratio_equal(const Rational& a, const Rational& b) const { return a == b; }
};

template <class T>
Tolerance<T> make_tolerance(const SimplexOptions& options) {
  if constexpr (std::is_same_v<T, double>) {
    return Tolerance<double>{options.tolerance};
  } else {
    return Tolerance<T>{};
  }
}

// Revised simplex for  max c.x  s.t.  A x = b (b >= 0), x >= 0, starting
// from an artificial basis. Columns 0..n-1 are structural, n..n+m-1 artificial.
template <class T>
class RevisedSimplex {
 public:
  RevisedSimplex(const LinearProgram<T>& program, const SimplexOptions& options)
      : m_(program.num_variables),
        n_(static_cast<int>(program.rows.size())),
        tol_(make_tolerance<T>(options)),
        options_(options) {
    sign_.assign(m_, 1);
    rhs_.assign(m_, T(0));
    for (int k = 0; k < m_; ++k) {
      if (sgn_of(program.objective[k]) < 0) sign_[k] = -1;
      rhs_[k] = sign_[k] < 0 ? T(-program.objective[k]) : program.objective[k];
    }
    columns_.resize(n_);
    cost2_.resize(n_);
    for (int j = 0; j < n_; ++j) {
      const Row<T>& row = program.rows[j];
      for (const Term<T>& t : row.terms) {
        if (t.variable < 0 || t.variable >= m_) throw ArgumentError("LP row references unknown variable");
        columns_[j].push_back({t.variable, sign_[t.variable] < 0 ? T(-t.coefficient) : t.coefficient});
      }
      cost2_[j] = row.rhs;
    }
    max_pivots_ = options.max_pivots ? options.max_pivots : 50 * static_cast<std::size_t>(n_ + m_) + 1000;
  }

  Result<T> run() {
    Result<T> result;
    initialise_artificial_basis();

    // Phase 1: maximise -sum(artificials).
    phase_ = 1;
    recompute_duals();
    Status s = iterate();
    if (s != Status::optimal) return finish(result, s);
    T infeasibility(0);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) infeasibility += x_[i];
    }
    if (tol_.positive(infeasibility)) return finish(result, Status::infeasible);
    drive_out_artificials();

    phase_ = 2;
    stalled_ = 0;
    recompute_duals();
    s = iterate();
    if (s != Status::optimal) return finish(result, s);

    result.solution.resize(m_);
    for (int k = 0; k < m_; ++k) result.solution[k] = sign_[k] < 0 ? T(-pi_[k]) : pi_[k];
    return finish(result, Status::optimal);
  }

 private:
  struct Entry {
    int row;
    T value;
  };

  static int sgn_of(const T& x) {
    if constexpr (std::is_same_v<T, double>) {
      return (x > 0) - (x < 0);
    } else {
      return sgn(x);
    }
  }

  Result<T> finish(Result<T>& result, Status status) {
    result.status = status;
    result.pivots = pivots_;
    return std::move(result);
  }

  T cost(int j) const {
    if (j >= n_) return phase_ == 1 ? T(-1) : T(0);
    return phase_ == 1 ? T(0) : cost2_[j];
  }

  T& binv(int i, int k) { return binv_[static_cast<std::size_t>(i) * m_ + k]; }

  void initialise_artificial_basis() {
    basis_.resize(m_);
    is_basic_.assign(n_ + m_, 0);
    binv_.assign(static_cast<std::size_t>(m_) * m_, T(0));
    x_ = rhs_;
    for (int i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      is_basic_[n_ + i] = 1;
      binv(i, i) = T(1);
    }
  }

  // pi = c_B^T B^{-1}
  void recompute_duals() {
    pi_.assign(m_, T(0));
    for (int i = 0; i < m_; ++i) {
      const T cb = cost(basis_[i]);
      if (!tol_.nonzero(cb)) continue;
      for (int k = 0; k < m_; ++k) pi_[k] += cb * binv(i, k);
    }
  }

  T reduced_cost(int j) const {
    T d = cost(j);
    if (j >= n_) return T(d - pi_[j - n_]);
    for (const Entry& e : columns_[j]) d -= pi_[e.row] * e.value;
    return d;
  }

  // alpha = B^{-1} a_j
  void ftran(int j, std::vector<T>& alpha) {
    alpha.assign(m_, T(0));
    if (j >= n_) {
      for (int i = 0; i < m_; ++i) alpha[i] = binv(i, j - n_);
      return;
    }
    for (const Entry& e : columns_[j]) {
      for (int i = 0; i < m_; ++i) alpha[i] += binv(i, e.row) * e.value;
    }
  }

  void pivot(int leave_row, int enter, const std::vector<T>& alpha, const T& reduced) {
    const T pivot_value = alpha[leave_row];
    for (int k = 0; k < m_; ++k) binv(leave_row, k) /= pivot_value;
    x_[leave_row] /= pivot_value;
    for (int i = 0; i < m_; ++i) {
      if (i == leave_row || !tol_.nonzero(alpha[i])) continue;
      const T factor = alpha[i];
      for (int k = 0; k < m_; ++k) binv(i, k) -= factor * binv(leave_row, k);
      x_[i] -= factor * x_[leave_row];
    }
    // pi' = pi + d_j * (new row leave_row of B^{-1})
    for (int k = 0; k < m_; ++k) pi_[k] += reduced * binv(leave_row, k);
    is_basic_[basis_[leave_row]] = 0;
    basis_[leave_row] = enter;
    is_basic_[enter] = 1;
    ++pivots_;
    if constexpr (std::is_same_v<T, double>) {
      if (options_.refactor_interval && pivots_ % options_.refactor_interval == 0) refactor();
    }
  }

  Status iterate() {
    std::vector<T> alpha;
    for (;;) {
      if (pivots_ >= max_pivots_) return Status::iteration_limit;
      const bool bland = options_.pricing == Pricing::bland || stalled_ >= options_.stall_limit;
      int enter = -1;
      T reduced(0);
      for (int j = 0; j < n_; ++j) {
        if (is_basic_[j]) continue;
        T d = reduced_cost(j);
        if (!tol_.positive(d)) continue;
        if (enter < 0 || reduced < d) {
          enter = j;
          reduced = std::move(d);
          if (bland) break;
        }
      }
      if (enter < 0) return Status::optimal;

      ftran(enter, alpha);
      int leave = -1;
      T best_ratio(0);
      for (int i = 0; i < m_; ++i) {
        if (!tol_.positive(alpha[i])) continue;
        T ratio = x_[i] / alpha[i];
        if (leave < 0 || tol_.ratio_less(ratio, best_ratio) ||
            (tol_.ratio_equal(ratio, best_ratio) && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave < 0) return Status::unbounded;
      stalled_ = tol_.positive(best_ratio) ? 0 : stalled_ + 1;
      pivot(leave, enter, alpha, reduced);
    }
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (int j = 0; j < n_; ++j) {
        if (is_basic_[j]) continue;
        T rho(0);
        for (const Entry& e : columns_[j]) rho += binv(i, e.row) * e.value;
        if (tol_.nonzero(rho)) {
          std::vector<T> alpha;
          ftran(j, alpha);
          pivot(i, j, alpha, T(0));
          break;
        }
      }
    }
  }

  // Rebuilds B^{-1} and x_B from the basis by Gauss-Jordan elimination.
  void refactor() {
    std::vector<double> b(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const int j = basis_[i];
      if (j >= n_) {
        b[static_cast<std::size_t>(j - n_) * m_ + i] = 1.0;
      } else {
        for (const Entry& e : columns_[j]) b[static_cast<std::size_t>(e.row) * m_ + i] = to_double(e.value);
      }
    }
    std::vector<double> inv(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) inv[static_cast<std::size_t>(i) * m_ + i] = 1.0;
    for (int col = 0; col < m_; ++col) {
      int piv = col;
      for (int r = col + 1; r < m_; ++r) {
        if (std::abs(b[static_cast<std::size_t>(r) * m_ + col]) > std::abs(b[static_cast<std::size_t>(piv) * m_ + col])) piv = r;
      }
      if (std::abs(b[static_cast<std::size_t>(piv) * m_ + col]) < 1e-14) return;  // keep the updated inverse
      if (piv != col) {
        for (int k = 0; k < m_; ++k) {
          std::swap(b[static_cast<std::size_t>(piv) * m_ + k], b[static_cast<std::size_t>(col) * m_ + k]);
          std::swap(inv[static_cast<std::size_t>(piv) * m_ + k], inv[static_cast<std::size_t>(col) * m_ + k]);
        }
      }
      const double d = b[static_cast<std::size_t>(col) * m_ + col];
      for (int k = 0; k < m_; ++k) {
        b[static_cast<std::size_t>(col) * m_ + k] /= d;
        inv[static_cast<std::size_t>(col) * m_ + k] /= d;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == col) continue;
        const double f = b[static_cast<std::size_t>(r) * m_ + col];
        if (f == 0.0) continue;
        for (int k = 0; k < m_; ++k) {
          b[static_cast<std::size_t>(r) * m_ + k] -= f * b[static_cast<std::size_t>(col) * m_ + k];
          inv[static_cast<std::size_t>(r) * m_ + k] -= f * inv[static_cast<std::size_t>(col) * m_ + k];
        }
      }
    }
    // inv = B^{-1} with rows indexed by basis position.
    for (std::size_t i = 0; i < binv_.size(); ++i) binv_[i] = inv[i];
    for (int i = 0; i < m_; ++i) {
      double v = 0.0;
      for (int k = 0; k < m_; ++k) v += inv[static_cast<std::size_t>(i) * m_ + k] * to_double(rhs_[k]);
      x_[i] = std::max(v, 0.0);
    }
    recompute_duals();
  }

  int m_;
  int n_;
  Tolerance<T> tol_;
  SimplexOptions options_;
  std::size_t max_pivots_ = 0;
  std::size_t pivots_ = 0;
  std::size_t stalled_ = 0;
  int phase_ = 1;

  std::vector<int> sign_;
  std::vector<T> rhs_;
  std::vector<std::vector<Entry>> columns_;
  std::vector<T> cost2_;

  std::vector<int> basis_;
  std::vector<char> is_basic_;
  std::vector<T> binv_;
  std::vector<T> x_;
  std::vector<T> pi_;
};

}  // namespace

template <class T>
Result<T> solve(const LinearProgram<T>& program, const SimplexOptions& options) {
  if (program.num_variables < 1) throw ArgumentError("LP needs at least one variable");
  if (static_cast<int>(program.objective.size()) != program.num_variables) {
    throw DimensionError("LP objective length differs from the variable count");
  }
  RevisedSimplex<T> simplex(program, options);
  Result<T> result = simplex.run();
  // The engine reports on the dual. An unbounded dual means an infeasible
  // primal; an infeasible dual means the primal is unbounded if it is
  // feasible at all, which the zero-objective problem decides.
  if (result.status == Status::unbounded) {
    result.status = Status::infeasible;
  } else if (result.status == Status::infeasible) {
    LinearProgram<T> feasibility = program;
    std::fill(feasibility.objective.begin(), feasibility.objective.end(), T(0));
    RevisedSimplex<T> check(feasibility, options);
    const Result<T> probe = check.run();
    result.pivots += probe.pivots;
    result.status = probe.status == Status::optimal     ? Status::unbounded
                    : probe.status == Status::unbounded ? Status::infeasible
                                                        : probe.status;
  }
  if (result.status == Status::optimal) {
    T value(0);
    for (int k = 0; k < program.num_variables; ++k) value += program.objective[k] * result.solution[k];
    result.objective = value;
  }
  return result;
}

template Result<double> solve(const LinearProgram<double>&, const SimplexOptions&);
template Result<Rational> solve(const LinearProgram<Rational>&, const SimplexOptions&);

}  // namespace tropfw::lp
