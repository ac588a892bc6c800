#pragma once

// Matroids given by their circuits, Bergman-fan membership and the
// circuit-argmax description of the cones of the fan.

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropfw/errors.hpp"
#include "tropfw/tropical.hpp"

namespace tropfw {

// Subset of the ground set [q], bit e set iff element e (0-based) is present.
using IndexSet = std::uint64_t;
inline constexpr int kMaxGroundSize = 64;

inline IndexSet singleton(int e) { return IndexSet{1} << e; }
inline bool contains(IndexSet set, int e) { return (set >> e) & 1U; }
inline bool is_subset(IndexSet a, IndexSet b) { return (a & ~b) == 0; }
inline int cardinality(IndexSet set) { return std::popcount(set); }
IndexSet make_index_set(const std::vector<int>& elements);
std::vector<int> elements_of(IndexSet set);
inline IndexSet full_set(int q) { return q == 64 ? ~IndexSet{0} : (IndexSet{1} << q) - 1; }

struct Flat {
  IndexSet elements = 0;
  bool is_connected = false;
  friend bool operator==(const Flat&, const Flat&) = default;
};

class Matroid {
 public:
  /// Builds a matroid from its circuits (0-based element lists). Checks
  /// looplessness, incomparability, connectivity, and, when
  /// `verify_elimination` is set, weak circuit elimination over all pairs.
  /// Circuits are stored in lexicographic order of their sorted element lists.
  static Matroid from_circuits(int ground_size, const std::vector<std::vector<int>>& circuits,
                               std::optional<bool> verify_elimination = std::nullopt);

  int ground_size() const noexcept { return q_; }
  const std::vector<IndexSet>& circuits() const noexcept { return circuits_; }

  // p when this is the graphic matroid of K_p with edges in lexicographic order.
  std::optional<int> complete_graph_order() const noexcept { return complete_graph_; }

  // Maximal proper flats, computed once and shared between copies. A
  // temporary returns a copy so the result cannot dangle.
  const std::vector<Flat>& maximal_proper_flats() const&;
  std::vector<Flat> maximal_proper_flats() const&& { return maximal_proper_flats_ref(); }

  friend bool operator==(const Matroid& a, const Matroid& b) {
    return a.q_ == b.q_ && a.circuits_ == b.circuits_;
  }

 private:
  friend Matroid graphic_matroid(int p);

  const std::vector<Flat>& maximal_proper_flats_ref() const;

  struct FlatCache {
    std::once_flag once;
    std::vector<Flat> flats;
  };

  int q_ = 0;
  std::vector<IndexSet> circuits_;
  std::optional<int> complete_graph_;
  std::shared_ptr<FlatCache> flat_cache_ = std::make_shared<FlatCache>();
};

// Index of edge {i, j} (0-based vertices, i != j) among the C(p,2) edges of
// K_p in lexicographic order.
int edge_index(int p, int i, int j);
std::pair<int, int> edge_endpoints(int p, int index);

/// Graphic matroid of the complete graph K_p (p >= 3).
Matroid graphic_matroid(int p);

/// Cycle matroid of a connected multigraph on vertices 0..(n-1); edge k is
/// edges[k]. Parallel edges give 2-circuits. Throws ArgumentError for self
/// loops and for graphs whose matroid is disconnected (bridges, cut vertices).
Matroid graph_matroid(const std::vector<std::pair<int, int>>& edges);

/// Uniform matroid U_{r,q}: circuits are all (r+1)-subsets.
Matroid uniform_matroid(int rank, int q);

IndexSet closure(const Matroid& m, IndexSet a);
int rank(const Matroid& m, IndexSet a);
bool is_independent(const Matroid& m, IndexSet a);
bool is_flat(const Matroid& m, IndexSet a);

/// True iff the restriction M|F is connected. Throws ArgumentError if F is not a flat.
bool is_connected_flat(const Matroid& m, IndexSet flat);

// Exhaustive route: walks the lattice of flats upward from the closure of
// the empty set. Guarded to q <= 28.
std::vector<Flat> maximal_proper_flats_exhaustive(const Matroid& m);
// Structural route for K_p: complements of the cuts of two-block vertex partitions.
std::vector<Flat> maximal_proper_flats_graphic(int p);

void write_matroid(std::ostream& out, const Matroid& m);
Matroid read_matroid(std::istream& in);

// Argmax set of each circuit at a point of the fan, in the matroid's circuit order.
struct ConeSignature {
  std::vector<IndexSet> circuits;
  std::vector<IndexSet> argmax;
  friend bool operator==(const ConeSignature&, const ConeSignature&) = default;
};

/// cone(a) is a face of cone(b): every argmax set of b is contained in the
/// corresponding argmax set of a.
bool signature_leq(const ConeSignature& a, const ConeSignature& b);

namespace detail {

template <class T>
void check_dimension(const Matroid& m, const BasicPoint<T>& w) {
  if (static_cast<int>(w.size()) != m.ground_size()) {
    throw DimensionError("vector of length " + std::to_string(w.size()) + " for matroid on " +
                         std::to_string(m.ground_size()) + " elements");
  }
}

template <class T>
IndexSet argmax_on(IndexSet circuit, const BasicPoint<T>& w) {
  const T* best = nullptr;
  for (IndexSet rest = circuit; rest; rest &= rest - 1) {
    const int e = std::countr_zero(rest);
    if (best == nullptr || ScalarTraits<T>::less(*best, w[e])) best = &w[e];
  }
  IndexSet out = 0;
  for (IndexSet rest = circuit; rest; rest &= rest - 1) {
    const int e = std::countr_zero(rest);
    if (ScalarTraits<T>::equal(w[e], *best)) out |= singleton(e);
  }
  return out;
}

// Largest and second-largest distinct value on a circuit; nullopt if constant.
template <class T>
std::optional<std::pair<T, T>> top_two_on(IndexSet circuit, const BasicPoint<T>& w) {
  std::optional<T> first;
  std::optional<T> second;
  for (IndexSet rest = circuit; rest; rest &= rest - 1) {
    const T& v = w[std::countr_zero(rest)];
    if (!first || ScalarTraits<T>::less(*first, v)) {
      if (first) second = first;
      first = v;
    } else if (!ScalarTraits<T>::equal(*first, v) && (!second || ScalarTraits<T>::less(*second, v))) {
      second = v;
    }
  }
  if (!second) return std::nullopt;
  return std::make_pair(*first, *second);
}

}  // namespace detail

/// w is an M-ultrametric: every circuit attains its maximum at least twice.
template <class T>
bool is_m_ultrametric(const Matroid& m, const BasicPoint<T>& w) {
  detail::check_dimension(m, w);
  for (IndexSet c : m.circuits()) {
    if (cardinality(detail::argmax_on(c, w)) < 2) return false;
  }
  return true;
}

template <class T>
ConeSignature cone_signature(const Matroid& m, const BasicPoint<T>& w) {
  detail::check_dimension(m, w);
  ConeSignature sig;
  sig.circuits = m.circuits();
  sig.argmax.reserve(m.circuits().size());
  for (IndexSet c : m.circuits()) {
    const IndexSet top = detail::argmax_on(c, w);
    if (cardinality(top) < 2) throw NotInFanError("cone_signature: point is not an M-ultrametric");
    sig.argmax.push_back(top);
  }
  return sig;
}

/// Smallest nonzero gap between the largest and second-largest value on a
/// circuit. For w in the relative interior of a maximal cone this is the
/// tropical distance from w to the boundary of its cone.
template <class T>
T w_min(const Matroid& m, const BasicPoint<T>& w) {
  detail::check_dimension(m, w);
  if (!is_m_ultrametric(m, w)) throw NotInFanError("w_min: point is not an M-ultrametric");
  std::optional<T> best;
  for (IndexSet c : m.circuits()) {
    if (auto top = detail::top_two_on(c, w)) {
      T gap = top->first - top->second;
      if (!best || gap < *best) best = gap;
    }
  }
  if (!best) throw DegenerateError("w_min: point is constant on every circuit");
  return *best;
}

/// Boundary point at tropical distance w_min from w: u = w + w_min * 1_B,
/// where B holds every coordinate equal to the second-largest value on a
/// circuit realising w_min.
template <class T>
BasicPoint<T> boundary_witness(const Matroid& m, const BasicPoint<T>& w) {
  const T gap = w_min(m, w);
  for (IndexSet c : m.circuits()) {
    auto top = detail::top_two_on(c, w);
    if (!top || !ScalarTraits<T>::equal(T(top->first - top->second), gap)) continue;
    std::vector<T> u(w.coords());
    for (std::size_t b = 0; b < u.size(); ++b) {
      if (ScalarTraits<T>::equal(w[b], top->second)) u[b] += gap;
    }
    return BasicPoint<T>(std::move(u));
  }
  throw DegenerateError("boundary_witness: no circuit realises w_min");
}

}  // namespace tropfw
