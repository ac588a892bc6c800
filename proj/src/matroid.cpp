#include "tropfw/matroid.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace tropfw {

IndexSet make_index_set(const std::vector<int>& elements) {
  IndexSet s = 0;
  for (int e : elements) {
    if (e < 0 || e >= kMaxGroundSize) throw ArgumentError("element index out of range: " + std::to_string(e));
    s |= singleton(e);
  }
  return s;
}

std::vector<int> elements_of(IndexSet set) {
  std::vector<int> out;
  out.reserve(cardinality(set));
  for (; set; set &= set - 1) out.push_back(std::countr_zero(set));
  return out;
}

namespace {

bool lex_less(IndexSet a, IndexSet b) {
  const std::vector<int> ea = elements_of(a);
  const std::vector<int> eb = elements_of(b);
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

// Union-find over ground elements joined by shared circuits.
class ElementUnion {
 public:
  explicit ElementUnion(int q) : parent_(q) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void join(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

bool circuits_connect(IndexSet ground, const std::vector<IndexSet>& circuits) {
  if (cardinality(ground) <= 1) return true;
  ElementUnion uf(kMaxGroundSize);
  for (IndexSet c : circuits) {
    if (!is_subset(c, ground)) continue;
    const int first = std::countr_zero(c);
    for (IndexSet rest = c & (c - 1); rest; rest &= rest - 1) uf.join(first, std::countr_zero(rest));
  }
  const int root = uf.find(std::countr_zero(ground));
  for (IndexSet rest = ground; rest; rest &= rest - 1) {
    if (uf.find(std::countr_zero(rest)) != root) return false;
  }
  return true;
}

bool contains_circuit(const std::vector<IndexSet>& circuits, IndexSet set) {
  return std::any_of(circuits.begin(), circuits.end(), [&](IndexSet c) { return is_subset(c, set); });
}

}  // namespace

Matroid Matroid::from_circuits(int ground_size, const std::vector<std::vector<int>>& circuit_lists,
                               std::optional<bool> verify_elimination) {
  if (ground_size < 1 || ground_size > kMaxGroundSize) {
    throw CapacityError("ground set size must be in [1, 64], got " + std::to_string(ground_size));
  }
  std::set<IndexSet> unique;
  for (const auto& list : circuit_lists) {
    if (list.empty()) throw ArgumentError("empty circuit");
    for (int e : list) {
      if (e < 0 || e >= ground_size) throw ArgumentError("circuit element out of range: " + std::to_string(e));
    }
    IndexSet c = make_index_set(list);
    if (cardinality(c) == 1) throw ArgumentError("singleton circuit: matroid has a loop");
    unique.insert(c);
  }
  std::vector<IndexSet> circuits(unique.begin(), unique.end());
  std::sort(circuits.begin(), circuits.end(), lex_less);

  for (std::size_t i = 0; i < circuits.size(); ++i) {
    for (std::size_t j = 0; j < circuits.size(); ++j) {
      if (i != j && is_subset(circuits[i], circuits[j])) {
        throw ArgumentError("circuits are not pairwise incomparable");
      }
    }
  }

  const bool verify = verify_elimination.value_or(ground_size <= 20);
  if (verify) {
    for (std::size_t i = 0; i < circuits.size(); ++i) {
      for (std::size_t j = i + 1; j < circuits.size(); ++j) {
        const IndexSet both = circuits[i] & circuits[j];
        const IndexSet either = circuits[i] | circuits[j];
        for (IndexSet rest = both; rest; rest &= rest - 1) {
          const IndexSet without = either & ~singleton(std::countr_zero(rest));
          if (!contains_circuit(circuits, without)) {
            throw ArgumentError("circuit elimination fails for circuits " + std::to_string(i) + " and " +
                                std::to_string(j));
          }
        }
      }
    }
  }

  if (!circuits_connect(full_set(ground_size), circuits)) {
    throw ArgumentError("matroid is not connected");
  }

  Matroid m;
  m.q_ = ground_size;
  m.circuits_ = std::move(circuits);
  return m;
}

const std::vector<Flat>& Matroid::maximal_proper_flats() const& { return maximal_proper_flats_ref(); }

const std::vector<Flat>& Matroid::maximal_proper_flats_ref() const {
  std::call_once(flat_cache_->once, [this] {
    flat_cache_->flats =
        complete_graph_ ? maximal_proper_flats_graphic(*complete_graph_) : maximal_proper_flats_exhaustive(*this);
  });
  return flat_cache_->flats;
}

int edge_index(int p, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= p || j >= p) throw ArgumentError("invalid edge of K_p");
  if (i > j) std::swap(i, j);
  return i * (2 * p - i - 1) / 2 + (j - i - 1);
}

std::pair<int, int> edge_endpoints(int p, int index) {
  for (int i = 0; i < p; ++i) {
    const int row = p - i - 1;
    if (index < row) return {i, i + 1 + index};
    index -= row;
  }
  throw ArgumentError("edge index out of range");
}

namespace {

// Simple cycles of a multigraph as edge sets. Each cycle is rooted at its
// smallest vertex; the DFS only visits larger vertices.
std::vector<IndexSet> enumerate_cycles(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<std::pair<int, int>>> adjacent(vertex_count);  // (neighbour, edge)
  for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
    adjacent[edges[k].first].push_back({edges[k].second, k});
    adjacent[edges[k].second].push_back({edges[k].first, k});
  }
  std::set<IndexSet> found;
  std::vector<char> on_path(vertex_count, 0);

  for (int start = 0; start < vertex_count; ++start) {
    auto dfs = [&](auto&& self, int v, IndexSet used, int first_edge) -> void {
      for (auto [w, k] : adjacent[v]) {
        if (contains(used, k)) continue;
        if (w == start) {
          if (k != first_edge) found.insert(used | singleton(k));
          continue;
        }
        if (w < start || on_path[w]) continue;
        on_path[w] = 1;
        self(self, w, used | singleton(k), first_edge < 0 ? k : first_edge);
        on_path[w] = 0;
      }
    };
    on_path[start] = 1;
    dfs(dfs, start, 0, -1);
    on_path[start] = 0;
  }
  return {found.begin(), found.end()};
}

}  // namespace

Matroid graphic_matroid(int p) {
  if (p < 3) throw ArgumentError("graphic_matroid requires p >= 3");
  if (p > 8) throw CapacityError("graphic_matroid: circuit enumeration is limited to p <= 8");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) edges.emplace_back(i, j);
  }
  std::vector<std::vector<int>> lists;
  for (IndexSet c : enumerate_cycles(p, edges)) lists.push_back(elements_of(c));
  Matroid m = Matroid::from_circuits(static_cast<int>(edges.size()), lists);
  m.complete_graph_ = p;
  return m;
}

Matroid graph_matroid(const std::vector<std::pair<int, int>>& edges) {
  if (edges.empty()) throw ArgumentError("graph_matroid: no edges");
  if (edges.size() > static_cast<std::size_t>(kMaxGroundSize)) throw CapacityError("graph_matroid: more than 64 edges");
  int vertex_count = 0;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0) throw ArgumentError("graph_matroid: negative vertex id");
    if (a == b) throw ArgumentError("graph_matroid: self loop at vertex " + std::to_string(a));
    vertex_count = std::max({vertex_count, a + 1, b + 1});
  }
  std::vector<std::vector<int>> lists;
  for (IndexSet c : enumerate_cycles(vertex_count, edges)) lists.push_back(elements_of(c));
  for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
    bool covered = false;
    for (const auto& c : lists) covered = covered || std::find(c.begin(), c.end(), k) != c.end();
    if (!covered) throw ArgumentError("graph_matroid: edge " + std::to_string(k) + " lies on no cycle (coloop)");
  }
  return Matroid::from_circuits(static_cast<int>(edges.size()), lists);
}

Matroid uniform_matroid(int r, int q) {
  if (r < 1 || r >= q) throw ArgumentError("uniform_matroid requires 1 <= rank < q");
  if (q > 20) throw CapacityError("uniform_matroid: q > 20");
  std::vector<std::vector<int>> lists;
  for (IndexSet s = 0; s <= full_set(q); ++s) {
    if (cardinality(s) == r + 1) lists.push_back(elements_of(s));
  }
  return Matroid::from_circuits(q, lists);
}

IndexSet closure(const Matroid& m, IndexSet a) {
  IndexSet current = a;
  for (;;) {
    IndexSet next = current;
    for (IndexSet c : m.circuits()) {
      const IndexSet outside = c & ~current;
      if (cardinality(outside) == 1) next |= outside;
    }
    if (next == current) return current;
    current = next;
  }
}

bool is_independent(const Matroid& m, IndexSet a) { return !contains_circuit(m.circuits(), a); }

int rank(const Matroid& m, IndexSet a) {
  IndexSet basis = 0;
  for (IndexSet rest = a; rest; rest &= rest - 1) {
    const IndexSet grown = basis | singleton(std::countr_zero(rest));
    if (is_independent(m, grown)) basis = grown;
  }
  return cardinality(basis);
}

bool is_flat(const Matroid& m, IndexSet a) { return closure(m, a) == a; }

bool is_connected_flat(const Matroid& m, IndexSet flat) {
  if (!is_flat(m, flat)) throw ArgumentError("is_connected_flat: set is not a flat");
  return circuits_connect(flat, m.circuits());
}

std::vector<Flat> maximal_proper_flats_exhaustive(const Matroid& m) {
  const int q = m.ground_size();
  if (q > 28) throw CapacityError("exhaustive flat enumeration is limited to q <= 28");
  const IndexSet ground = full_set(q);
  const int top_rank = rank(m, ground);

  std::set<IndexSet> level{closure(m, 0)};
  for (int r = rank(m, *level.begin()); r < top_rank - 1; ++r) {
    std::set<IndexSet> next;
    for (IndexSet f : level) {
      for (int e = 0; e < q; ++e) {
        if (!contains(f, e)) next.insert(closure(m, f | singleton(e)));
      }
    }
    level = std::move(next);
  }
  std::vector<Flat> out;
  for (IndexSet f : level) {
    if (f != ground) out.push_back({f, circuits_connect(f, m.circuits())});
  }
  std::sort(out.begin(), out.end(), [](const Flat& a, const Flat& b) { return a.elements < b.elements; });
  return out;
}

std::vector<Flat> maximal_proper_flats_graphic(int p) {
  if (p < 3) throw ArgumentError("maximal_proper_flats_graphic requires p >= 3");
  std::vector<Flat> out;
  // Vertex 0 always sits in the first block; the second block is nonempty.
  for (std::uint32_t mask = 0; mask + 1 < (1U << (p - 1)); ++mask) {
    const std::uint32_t first_block = 1U | (mask << 1);
    IndexSet edges = 0;
    for (int i = 0; i < p; ++i) {
      for (int j = i + 1; j < p; ++j) {
        const bool a = (first_block >> i) & 1U;
        const bool b = (first_block >> j) & 1U;
        if (a == b) edges |= singleton(edge_index(p, i, j));
      }
    }
    // K_a + K_b is a direct sum (disconnected) once both blocks carry edges;
    // a single K_{p-1} is connected.
    const int first_size = std::popcount(first_block);
    out.push_back({edges, std::min(first_size, p - first_size) == 1});
  }
  std::sort(out.begin(), out.end(), [](const Flat& a, const Flat& b) { return a.elements < b.elements; });
  return out;
}

void write_matroid(std::ostream& out, const Matroid& m) {
  out << "q=" << m.ground_size() << '\n';
  for (IndexSet c : m.circuits()) {
    bool first = true;
    for (int e : elements_of(c)) {
      out << (first ? "" : " ") << (e + 1);
      first = false;
    }
    out << '\n';
  }
}

Matroid read_matroid(std::istream& in) {
  std::string line;
  std::size_t offset = 0;
  if (!std::getline(in, line) || line.rfind("q=", 0) != 0) throw ParseError("matroid file must start with q=<int>", 0);
  int q = 0;
  try {
    q = std::stoi(line.substr(2));
  } catch (const std::exception&) {
    throw ParseError("invalid ground set size", 2);
  }
  offset += line.size() + 1;
  std::vector<std::vector<int>> circuits;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::vector<int> c;
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        const int e = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        c.push_back(e - 1);
      } catch (const std::exception&) {
        throw ParseError("invalid circuit element '" + token + "'", offset);
      }
    }
    if (!c.empty()) circuits.push_back(std::move(c));
    offset += line.size() + 1;
  }
  return Matroid::from_circuits(q, circuits);
}

bool signature_leq(const ConeSignature& a, const ConeSignature& b) {
  if (a.circuits != b.circuits) throw ArgumentError("signature_leq: signatures come from different matroids");
  for (std::size_t i = 0; i < a.argmax.size(); ++i) {
    if (!is_subset(b.argmax[i], a.argmax[i])) return false;
  }
  return true;
}

}  // namespace tropfw
