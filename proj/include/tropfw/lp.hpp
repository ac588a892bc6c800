#pragma once

// Small self-contained LP engine used by the Fermat-Weber solvers.
//
// Problems have the form
//     minimise  c . y   subject to  a_r . y >= b_r  (r = 1..R),  y free.
// They are solved through their dual in standard form
//     maximise  b . lambda   subject to  A^T lambda = c,  lambda >= 0
// with a revised simplex method (dense basis inverse, sparse columns). The
// optimal y is read off the simplex multipliers.

#include <cstddef>
#include <string_view>
#include <vector>

#include "tropfw/scalar.hpp"

namespace tropfw::lp {

template <class T>
struct Term {
  int variable;
  T coefficient;
};

template <class T>
struct Row {
  std::vector<Term<T>> terms;
  T rhs;
};

template <class T>
struct LinearProgram {
  int num_variables = 0;
  std::vector<T> objective;  // minimised
  std::vector<Row<T>> rows;  // terms . y >= rhs

  explicit LinearProgram(int variables = 0) : num_variables(variables), objective(variables, T(0)) {}

  void add_row(std::vector<Term<T>> terms, T rhs) { rows.push_back({std::move(terms), std::move(rhs)}); }
};

enum class Status { optimal, infeasible, unbounded, iteration_limit };

std::string_view to_string(Status status);

template <class T>
struct Result {
  Status status = Status::iteration_limit;
  std::vector<T> solution;
  T objective{0};
  std::size_t pivots = 0;
};

enum class Pricing {
  dantzig,  // largest reduced cost, lowest index on ties; Bland after a degenerate stall
  bland,    // lowest-index improving column throughout
};

struct SimplexOptions {
  Pricing pricing = Pricing::dantzig;
  std::size_t stall_limit = 200;        // consecutive degenerate pivots before Bland takes over
  std::size_t max_pivots = 0;           // 0: 50 * (rows + variables) + 1000
  std::size_t refactor_interval = 100;  // floating point only
  double tolerance = 1e-9;              // floating point only
};

template <class T>
Result<T> solve(const LinearProgram<T>& program, const SimplexOptions& options = {});

extern template Result<double> solve(const LinearProgram<double>&, const SimplexOptions&);
extern template Result<Rational> solve(const LinearProgram<Rational>&, const SimplexOptions&);

}  // namespace tropfw::lp
