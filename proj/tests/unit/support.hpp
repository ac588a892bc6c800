#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "tropfw/matroid.hpp"
#include "tropfw/projection.hpp"
#include "tropfw/tropical.hpp"

namespace testing {

using tropfw::ExactPoint;
using tropfw::Rational;
using tropfw::TropicalPoint;

inline TropicalPoint random_point(std::mt19937_64& gen, int q, double lo = -10.0, double hi = 10.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> x(q);
  for (double& c : x) c = u(gen);
  return TropicalPoint(std::move(x));
}

// Small integers divided by 4: exact in both double and rational arithmetic.
inline ExactPoint random_exact_point(std::mt19937_64& gen, int q, int range = 40) {
  std::uniform_int_distribution<int> u(-range, range);
  std::vector<Rational> x(q);
  for (auto& c : x) {
    c = Rational(u(gen), 4);
    c.canonicalize();
  }
  return ExactPoint(std::move(x));
}

inline TropicalPoint random_integer_point(std::mt19937_64& gen, int q, int range = 20) {
  std::uniform_int_distribution<int> u(-range, range);
  std::vector<double> x(q);
  for (double& c : x) c = u(gen);
  return TropicalPoint(std::move(x));
}

// Minimax path weights by a Floyd-Warshall style closure; independent of the
// spanning-tree route used by the library.
inline std::vector<double> minimax_oracle(int p, const std::vector<double>& x) {
  std::vector<std::vector<double>> d(p, std::vector<double>(p, 0.0));
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) d[i][j] = d[j][i] = x[tropfw::edge_index(p, i, j)];
  }
  for (int k = 0; k < p; ++k) {
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) {
        if (i != j) d[i][j] = std::min(d[i][j], std::max(d[i][k], d[k][j]));
      }
    }
  }
  std::vector<double> out;
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) out.push_back(d[i][j]);
  }
  return out;
}

// A random point of the fan of K_p in the interior of a maximal cone:
// cophenetic vector of a random binary tree with distinct merge heights.
inline TropicalPoint random_generic_ultrametric(std::mt19937_64& gen, int p) {
  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < p; ++i) clusters.push_back({i});
  std::vector<double> x(p * (p - 1) / 2, 0.0);
  std::uniform_real_distribution<double> step(0.5, 3.0);
  double height = 0.0;
  while (clusters.size() > 1) {
    std::uniform_int_distribution<std::size_t> pick(0, clusters.size() - 1);
    std::size_t a = pick(gen);
    std::size_t b = pick(gen);
    while (b == a) b = pick(gen);
    height += step(gen);
    for (int i : clusters[a]) {
      for (int j : clusters[b]) x[tropfw::edge_index(p, i, j)] = height;
    }
    clusters[a].insert(clusters[a].end(), clusters[b].begin(), clusters[b].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(b));
  }
  return TropicalPoint(std::move(x));
}

}  // namespace testing
