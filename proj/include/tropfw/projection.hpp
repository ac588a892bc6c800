#pragma once

// Tropical projection onto tropical polytopes and Bergman fans.

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include "tropfw/matroid.hpp"
#include "tropfw/tropical.hpp"

namespace tropfw {

// Generators of a tropical polytope in TP^{q-1}. A coordinate flagged as
// -infinity is stored as a flag; its value slot is ignored.
template <class T>
class PolytopeVertexSet {
 public:
  explicit PolytopeVertexSet(int q) : q_(q) {
    if (q < 1) throw ArgumentError("PolytopeVertexSet: dimension must be positive");
  }

  void add(std::vector<T> values, std::vector<bool> neg_inf) {
    if (static_cast<int>(values.size()) != q_ || static_cast<int>(neg_inf.size()) != q_) {
      throw DimensionError("PolytopeVertexSet: vertex has wrong length");
    }
    if (std::all_of(neg_inf.begin(), neg_inf.end(), [](bool b) { return b; })) {
      throw ArgumentError("PolytopeVertexSet: vertex is -infinity in every coordinate");
    }
    values_.push_back(std::move(values));
    neg_inf_.push_back(std::move(neg_inf));
  }

  // v_F: -infinity on F, zero elsewhere.
  void add_flat_vertex(IndexSet flat) {
    std::vector<bool> mask(q_);
    for (int e = 0; e < q_; ++e) mask[e] = contains(flat, e);
    add(std::vector<T>(q_, T(0)), std::move(mask));
  }

  int dimension() const noexcept { return q_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<T>& values(std::size_t i) const { return values_[i]; }
  bool is_neg_inf(std::size_t i, int e) const { return neg_inf_[i][e]; }

 private:
  int q_;
  std::vector<std::vector<T>> values_;
  std::vector<std::vector<bool>> neg_inf_;
};

/// Nearest point of tconv(V) to x under the tropical metric:
/// lambda_i = min_e (x - v_i)_e, result = max_i (lambda_i + v_i).
/// Coordinates where v_i is -infinity never attain the min and never win the max.
template <class T>
BasicPoint<T> project_polytope(const PolytopeVertexSet<T>& vertices, const BasicPoint<T>& x) {
  const int q = vertices.dimension();
  if (static_cast<int>(x.size()) != q) throw DimensionError("project_polytope: dimension mismatch");
  if (vertices.size() == 0) throw ArgumentError("project_polytope: empty vertex set");

  std::vector<std::optional<T>> out(q);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::vector<T>& v = vertices.values(i);
    std::optional<T> lambda;
    for (int e = 0; e < q; ++e) {
      if (vertices.is_neg_inf(i, e)) continue;
      T candidate = x[e] - v[e];
      if (!lambda || candidate < *lambda) lambda = std::move(candidate);
    }
    for (int e = 0; e < q; ++e) {
      if (vertices.is_neg_inf(i, e)) continue;
      T candidate = *lambda + v[e];
      if (!out[e] || *out[e] < candidate) out[e] = std::move(candidate);
    }
  }
  std::vector<T> coords(q);
  for (int e = 0; e < q; ++e) {
    if (!out[e]) throw DegenerateError("project_polytope: coordinate " + std::to_string(e) + " is -infinity in every vertex");
    coords[e] = *out[e];
  }
  return BasicPoint<T>(std::move(coords));
}

/// Subdominant ultrametric of x on K_p: coordinate (i,j) is the minimax edge
/// weight over i-j paths. The minimax path runs along a minimum spanning tree.
template <class T>
BasicPoint<T> project_ultrametric_fast(int p, const BasicPoint<T>& x) {
  if (p < 2 || static_cast<int>(x.size()) != p * (p - 1) / 2) {
    throw DimensionError("project_ultrametric_fast: vector length is not C(p,2)");
  }
  auto weight = [&](int i, int j) -> const T& { return x[edge_index(p, i, j)]; };

  // Prim on the complete graph; ties resolve towards the smaller vertex.
  std::vector<int> parent(p, -1);
  std::vector<char> in_tree(p, 0);
  std::vector<std::optional<T>> best(p);
  std::vector<std::vector<int>> tree(p);
  in_tree[0] = 1;
  for (int v = 1; v < p; ++v) {
    best[v] = weight(0, v);
    parent[v] = 0;
  }
  for (int step = 1; step < p; ++step) {
    int next = -1;
    for (int v = 0; v < p; ++v) {
      if (!in_tree[v] && (next < 0 || *best[v] < *best[next])) next = v;
    }
    in_tree[next] = 1;
    tree[next].push_back(parent[next]);
    tree[parent[next]].push_back(next);
    for (int v = 0; v < p; ++v) {
      if (!in_tree[v] && weight(next, v) < *best[v]) {
        best[v] = weight(next, v);
        parent[v] = next;
      }
    }
  }

  // Largest tree-edge weight on each tree path, by a walk from every source.
  std::vector<T> out(x.size());
  std::vector<std::optional<T>> path_max(p);
  std::vector<int> stack;
  for (int s = 0; s < p; ++s) {
    std::fill(path_max.begin(), path_max.end(), std::nullopt);
    std::vector<char> seen(p, 0);
    seen[s] = 1;
    stack.assign(1, s);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : tree[v]) {
        if (seen[w]) continue;
        seen[w] = 1;
        const T& edge = weight(v, w);
        path_max[w] = (path_max[v] && edge < *path_max[v]) ? *path_max[v] : edge;
        stack.push_back(w);
      }
    }
    for (int t = s + 1; t < p; ++t) out[edge_index(p, s, t)] = *path_max[t];
  }
  return BasicPoint<T>(std::move(out));
}

enum class ProjectionRoute {
  automatic,  // minimax paths when the matroid is K_p, flats otherwise
  flats,      // tropical polytope over the maximal proper flats
  minimax,    // K_p only
};

template <class T>
PolytopeVertexSet<T> bergman_vertices(const Matroid& m) {
  PolytopeVertexSet<T> vertices(m.ground_size());
  for (const Flat& f : m.maximal_proper_flats()) vertices.add_flat_vertex(f.elements);
  return vertices;
}

/// The subdominant M-ultrametric: the largest point of the Bergman fan that
/// is coordinatewise <= x.
template <class T>
BasicPoint<T> project_bergman(const Matroid& m, const BasicPoint<T>& x,
                              ProjectionRoute route = ProjectionRoute::automatic) {
  detail::check_dimension(m, x);
  const auto p = m.complete_graph_order();
  if (route == ProjectionRoute::minimax && !p) {
    throw ArgumentError("project_bergman: minimax route needs the matroid of a complete graph");
  }
  if (p && route != ProjectionRoute::flats) return project_ultrametric_fast(*p, x);
  return project_polytope(bergman_vertices<T>(m), x);
}

/// d_tr(pi(x), pi(y)) <= d_tr(x, y) up to 1e-12 (exactly for rationals).
template <class T>
bool check_nonexpansive(const Matroid& m, const BasicPoint<T>& x, const BasicPoint<T>& y) {
  const T before = tropical_distance(x, y);
  const T after = tropical_distance(project_bergman(m, x), project_bergman(m, y));
  if constexpr (ScalarTraits<T>::exact) {
    return after <= before;
  } else {
    return after <= before + 1e-12;
  }
}

// Projects each point; the parallel variant splits points across OpenMP
// threads and must agree exactly with the serial one.
std::vector<TropicalPoint> project_many_serial(const Matroid& m, const std::vector<TropicalPoint>& xs);
std::vector<TropicalPoint> project_many_parallel(const Matroid& m, const std::vector<TropicalPoint>& xs,
                                                 int threads = 0);

}  // namespace tropfw
