#include "tropfw/phylo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "tropfw/matroid.hpp"
#include "tropfw/projection.hpp"

namespace tropfw {

PhyloTree::PhyloTree(std::vector<PhyloNode> nodes, int root) : nodes_(std::move(nodes)), root_(root) {
  const int count = static_cast<int>(nodes_.size());
  if (root_ < 0 || root_ >= count) throw ArgumentError("PhyloTree: root index out of range");
  if (nodes_[root_].parent != -1) throw ArgumentError("PhyloTree: root has a parent");
  std::vector<char> seen(count, 0);
  std::set<std::string> labels;
  std::vector<int> stack{root_};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (seen[v]) throw ArgumentError("PhyloTree: node reached twice");
    seen[v] = 1;
    const PhyloNode& node = nodes_[v];
    if (!std::isfinite(node.length) || node.length < 0) throw ArgumentError("PhyloTree: negative or non-finite branch length");
    if (node.children.empty()) {
      if (node.label.empty()) throw ArgumentError("PhyloTree: unlabelled leaf");
      if (!labels.insert(node.label).second) throw ArgumentError("PhyloTree: duplicate leaf label " + node.label);
    } else if (node.children.size() < 2) {
      throw ArgumentError("PhyloTree: internal node with a single child");
    }
    for (int c : node.children) {
      if (c < 0 || c >= count || nodes_[c].parent != v) throw ArgumentError("PhyloTree: inconsistent parent links");
      stack.push_back(c);
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw ArgumentError("PhyloTree: unreachable node");
  if (labels.size() < 2) throw ArgumentError("PhyloTree: fewer than two leaves");
}

std::size_t PhyloTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const PhyloNode& n) { return n.children.empty(); }));
}

std::vector<std::string> PhyloTree::leaf_labels() const {
  std::vector<std::string> out;
  for (const PhyloNode& n : nodes_) {
    if (n.children.empty()) out.push_back(n.label);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool is_plain_label_char(char c) {
  return c != '(' && c != ')' && c != ',' && c != ':' && c != ';' && c != '[' && c != ']' && c != '\'' &&
         !std::isspace(static_cast<unsigned char>(c));
}

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : s_(text) {}

  PhyloTree parse() {
    const int root = parse_subtree(-1);
    skip_space();
    if (pos_ >= s_.size() || s_[pos_] != ';') fail("expected ';'");
    ++pos_;
    skip_space();
    if (pos_ != s_.size()) fail("unexpected text after ';'");

    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (static_cast<int>(i) != root && !has_length_[i]) throw ParseError("missing branch length", offsets_[i]);
    }
    std::map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (!nodes_[i].children.empty()) continue;
      if (!seen.emplace(nodes_[i].label, offsets_[i]).second) {
        throw ParseError("duplicate leaf label '" + nodes_[i].label + "'", offsets_[i]);
      }
    }
    if (seen.size() < 2) throw ParseError("tree has fewer than two leaves", 0);

    std::vector<PhyloNode> out;
    build(root, -1, 0.0, out);
    return PhyloTree(std::move(out), 0);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    for (;;) {
      while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '[') {
        const std::size_t close = s_.find(']', pos_);
        if (close == std::string_view::npos) fail("unterminated comment");
        pos_ = close + 1;
        continue;
      }
      return;
    }
  }

  std::string parse_label() {
    skip_space();
    std::string label;
    if (pos_ < s_.size() && s_[pos_] == '\'') {
      const std::size_t start = pos_++;
      for (;;) {
        if (pos_ >= s_.size()) throw ParseError("unterminated quoted label", start);
        if (s_[pos_] == '\'') {
          if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '\'') {
            label.push_back('\'');
            pos_ += 2;
            continue;
          }
          ++pos_;
          break;
        }
        label.push_back(s_[pos_++]);
      }
      return label;
    }
    while (pos_ < s_.size() && is_plain_label_char(s_[pos_])) label.push_back(s_[pos_++]);
    return label;
  }

  void parse_length(int node) {
    skip_space();
    if (pos_ >= s_.size() || s_[pos_] != ':') return;
    ++pos_;
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '+') ++pos_;
    double value = 0.0;
    const auto [end, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), value);
    if (ec != std::errc() || end == s_.data() + pos_) throw ParseError("malformed branch length", start);
    if (!std::isfinite(value)) throw ParseError("non-finite branch length", start);
    if (value < 0) throw ParseError("negative branch length", start);
    pos_ = static_cast<std::size_t>(end - s_.data());
    nodes_[node].length = value;
    has_length_[node] = 1;
  }

  int new_node(int parent) {
    nodes_.push_back(PhyloNode{});
    nodes_.back().parent = parent;
    has_length_.push_back(0);
    offsets_.push_back(pos_);
    return static_cast<int>(nodes_.size()) - 1;
  }

  int parse_subtree(int parent) {
    skip_space();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const int node = new_node(parent);
    if (s_[pos_] == '(') {
      ++pos_;
      for (;;) {
        const int child = parse_subtree(node);
        nodes_[node].children.push_back(child);
        skip_space();
        if (pos_ >= s_.size()) fail("unbalanced parentheses");
        if (s_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (s_[pos_] == ')') {
          ++pos_;
          break;
        }
        fail("expected ',' or ')'");
      }
      nodes_[node].label = parse_label();
    } else {
      if (s_[pos_] == ')' || s_[pos_] == ',' || s_[pos_] == ';') fail("leaf without a label");
      nodes_[node].label = parse_label();
      if (nodes_[node].label.empty()) fail("leaf without a label");
    }
    parse_length(node);
    return node;
  }

  // Copies the subtree into `out`, merging single-child chains.
  void build(int old, int parent, double carried, std::vector<PhyloNode>& out) {
    const PhyloNode& src = nodes_[old];
    if (src.children.size() == 1) {
      build(src.children.front(), parent, carried + src.length, out);
      return;
    }
    const int index = static_cast<int>(out.size());
    out.push_back(PhyloNode{src.label, src.length + carried, parent, {}});
    if (parent >= 0) out[parent].children.push_back(index);
    for (int c : src.children) build(c, index, 0.0, out);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<PhyloNode> nodes_;
  std::vector<char> has_length_;
  std::vector<std::size_t> offsets_;
};

std::string quote_label(const std::string& label) {
  if (!label.empty() && std::all_of(label.begin(), label.end(), is_plain_label_char)) return label;
  std::string out = "'";
  for (char c : label) {
    if (c == '\'') out.push_back('\'');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

}  // namespace

PhyloTree parse_newick(std::string_view text) { return NewickParser(text).parse(); }

std::vector<PhyloTree> read_newick_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<PhyloTree> trees;
  std::string line;
  std::size_t offset = 0;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::size_t line_start = offset;
    offset += line.size() + 1;
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;
    try {
      trees.push_back(parse_newick(line));
    } catch (const ParseError& e) {
      throw ParseError(path.string() + " line " + std::to_string(line_number) + ": " + e.message(),
                       line_start + e.offset());
    }
  }
  return trees;
}

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc()) throw Error("format_number: conversion failed");
  return std::string(buffer, end);
}

std::string write_newick(const PhyloTree& tree) {
  const auto& nodes = tree.nodes();
  std::vector<std::string> smallest(nodes.size());
  std::function<const std::string&(int)> first_label = [&](int v) -> const std::string& {
    if (nodes[v].children.empty()) return nodes[v].label;
    if (smallest[v].empty()) {
      smallest[v] = first_label(nodes[v].children.front());
      for (int c : nodes[v].children) smallest[v] = std::min(smallest[v], first_label(c));
    }
    return smallest[v];
  };
  std::function<void(int, std::string&)> emit = [&](int v, std::string& out) {
    const PhyloNode& node = nodes[v];
    if (!node.children.empty()) {
      std::vector<int> order(node.children);
      std::sort(order.begin(), order.end(), [&](int a, int b) { return first_label(a) < first_label(b); });
      out.push_back('(');
      for (std::size_t k = 0; k < order.size(); ++k) {
        if (k) out.push_back(',');
        emit(order[k], out);
      }
      out.push_back(')');
      if (!node.label.empty()) out += quote_label(node.label);
    } else {
      out += quote_label(node.label);
    }
    if (v != tree.root() || node.length != 0.0) {
      out.push_back(':');
      out += format_number(node.length);
    }
  };
  std::string out;
  emit(tree.root(), out);
  out.push_back(';');
  return out;
}

double DissimilarityVector::at(int i, int j) const {
  if (i == j) return 0.0;
  return entries.at(edge_index(size(), i, j));
}

DissimilarityVector DissimilarityVector::from_point(std::vector<std::string> labels, const TropicalPoint& x) {
  const std::size_t p = labels.size();
  if (x.size() != p * (p - 1) / 2) throw DimensionError("dissimilarity vector length is not C(p,2)");
  return DissimilarityVector{std::move(labels), x.coords()};
}

std::vector<std::string> default_labels(int p) {
  std::vector<std::string> out;
  for (int i = 0; i < p; ++i) out.push_back(p <= 26 ? std::string(1, static_cast<char>('A' + i)) : "L" + std::to_string(i + 1));
  return out;
}

void write_dissimilarity_csv(std::ostream& out, const std::vector<DissimilarityVector>& vectors) {
  if (vectors.empty()) throw ArgumentError("write_dissimilarity_csv: no vectors");
  const auto& labels = vectors.front().labels;
  for (const std::string& l : labels) {
    if (l.find_first_of("|,\n\"") != std::string::npos) throw ArgumentError("label '" + l + "' cannot be written to CSV");
  }
  const int p = static_cast<int>(labels.size());
  bool first = true;
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      if (!first) out << ',';
      out << labels[i] << '|' << labels[j];
      first = false;
    }
  }
  out << '\n';
  for (const auto& v : vectors) {
    if (v.labels != labels) throw ArgumentError("write_dissimilarity_csv: vectors have different labels");
    for (std::size_t k = 0; k < v.entries.size(); ++k) {
      if (k) out << ',';
      out << format_number(v.entries[k]);
    }
    out << '\n';
  }
}

namespace {

std::vector<std::pair<std::string, std::size_t>> split_fields(const std::string& line, std::size_t base) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    std::string field = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t lead = 0;
    while (lead < field.size() && std::isspace(static_cast<unsigned char>(field[lead]))) ++lead;
    std::size_t trail = field.size();
    while (trail > lead && std::isspace(static_cast<unsigned char>(field[trail - 1]))) --trail;
    out.emplace_back(field.substr(lead, trail - lead), base + start + lead);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double_field(const std::string& field, std::size_t offset) {
  double value = 0.0;
  const char* begin = field.data();
  if (!field.empty() && field.front() == '+') ++begin;
  const auto [end, ec] = std::from_chars(begin, field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || end != field.data() + field.size() || !std::isfinite(value)) {
    throw ParseError("malformed number '" + field + "'", offset);
  }
  return value;
}

}  // namespace

std::vector<DissimilarityVector> read_dissimilarity_csv(std::istream& in) {
  std::string line;
  std::size_t offset = 0;
  if (!std::getline(in, line)) throw ParseError("empty dissimilarity CSV", 0);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_fields(line, 0);
  offset = line.size() + 1;

  const std::size_t q = header.size();
  int p = 2;
  while (static_cast<std::size_t>(p * (p - 1) / 2) < q) ++p;
  if (static_cast<std::size_t>(p * (p - 1) / 2) != q) throw ParseError("header length is not C(p,2)", 0);
  std::vector<std::string> labels(p);
  auto split_pair = [&](std::size_t k) {
    const auto& [text, at] = header[k];
    const std::size_t bar = text.find('|');
    if (bar == std::string::npos || bar == 0 || bar + 1 == text.size()) throw ParseError("header field is not 'i|j'", at);
    return std::make_pair(text.substr(0, bar), text.substr(bar + 1));
  };
  labels[0] = split_pair(0).first;
  for (int j = 1; j < p; ++j) labels[j] = split_pair(j - 1).second;
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      const std::size_t k = edge_index(p, i, j);
      if (split_pair(k) != std::make_pair(labels[i], labels[j])) {
        throw ParseError("header is not in lexicographic pair order", header[k].second);
      }
    }
  }

  std::vector<DissimilarityVector> out;
  while (std::getline(in, line)) {
    const std::size_t line_start = offset;
    offset += line.size() + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = split_fields(line, line_start);
    if (fields.size() != q) throw ParseError("row has " + std::to_string(fields.size()) + " fields, expected " + std::to_string(q), line_start);
    DissimilarityVector v{labels, std::vector<double>(q)};
    for (std::size_t k = 0; k < q; ++k) v.entries[k] = parse_double_field(fields[k].first, fields[k].second);
    out.push_back(std::move(v));
  }
  return out;
}

DissimilarityVector cophenetic_vector(const PhyloTree& tree) {
  const auto& nodes = tree.nodes();
  std::vector<double> depth(nodes.size(), 0.0);
  std::vector<int> order{tree.root()};
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (int c : nodes[order[k]].children) {
      depth[c] = depth[order[k]] + nodes[c].length;
      order.push_back(c);
    }
  }
  std::map<std::string, int> leaf_of;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].children.empty()) leaf_of[nodes[i].label] = static_cast<int>(i);
  }
  DissimilarityVector out;
  for (const auto& [label, index] : leaf_of) out.labels.push_back(label);
  const int p = out.size();
  out.entries.assign(p * (p - 1) / 2, 0.0);
  std::vector<char> ancestor(nodes.size(), 0);
  for (int i = 0; i < p; ++i) {
    std::fill(ancestor.begin(), ancestor.end(), 0);
    for (int v = leaf_of[out.labels[i]]; v >= 0; v = nodes[v].parent) ancestor[v] = 1;
    for (int j = i + 1; j < p; ++j) {
      const int leaf = leaf_of[out.labels[j]];
      int v = leaf;
      while (!ancestor[v]) v = nodes[v].parent;
      out.entries[edge_index(p, i, j)] = depth[leaf_of[out.labels[i]]] + depth[leaf] - 2 * depth[v];
    }
  }
  return out;
}

namespace {

bool top_two_tied(double a, double b, double c, double tol) {
  double v[3] = {a, b, c};
  std::sort(v, v + 3);
  return v[2] - v[1] <= tol;
}

void check_vector(const DissimilarityVector& d) {
  const std::size_t p = d.labels.size();
  if (d.entries.size() != p * (p - 1) / 2) throw DimensionError("dissimilarity vector length is not C(p,2)");
}

}  // namespace

bool is_ultrametric(const DissimilarityVector& d, double tol) {
  check_vector(d);
  const int p = d.size();
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      for (int k = j + 1; k < p; ++k) {
        if (!top_two_tied(d.at(i, j), d.at(i, k), d.at(j, k), tol)) return false;
      }
    }
  }
  return true;
}

bool is_tree_metric(const DissimilarityVector& d, double tol) {
  check_vector(d);
  const int p = d.size();
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      for (int k = j + 1; k < p; ++k) {
        for (int l = k + 1; l < p; ++l) {
          if (!top_two_tied(d.at(i, j) + d.at(k, l), d.at(i, k) + d.at(j, l), d.at(i, l) + d.at(j, k), tol)) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

DissimilarityVector single_linkage(const DissimilarityVector& d) {
  check_vector(d);
  if (d.size() < 2) return d;
  return DissimilarityVector::from_point(d.labels, project_ultrametric_fast(d.size(), d.as_point()));
}

DissimilarityVector average_linkage(const DissimilarityVector& d) {
  check_vector(d);
  const int p = d.size();
  DissimilarityVector out{d.labels, std::vector<double>(d.entries.size(), 0.0)};
  std::vector<std::vector<int>> members(p);
  std::vector<std::vector<double>> dist(p, std::vector<double>(p, 0.0));
  for (int i = 0; i < p; ++i) {
    members[i] = {i};
    for (int j = 0; j < p; ++j) dist[i][j] = d.at(i, j);
  }
  std::vector<char> alive(p, 1);
  for (int step = 1; step < p; ++step) {
    int a = -1;
    int b = -1;
    for (int i = 0; i < p; ++i) {
      if (!alive[i]) continue;
      for (int j = i + 1; j < p; ++j) {
        if (alive[j] && (a < 0 || dist[i][j] < dist[a][b])) {
          a = i;
          b = j;
        }
      }
    }
    const double height = dist[a][b];
    for (int x : members[a]) {
      for (int y : members[b]) out.entries[edge_index(p, x, y)] = height;
    }
    const double wa = static_cast<double>(members[a].size());
    const double wb = static_cast<double>(members[b].size());
    for (int k = 0; k < p; ++k) {
      if (!alive[k] || k == a || k == b) continue;
      dist[a][k] = dist[k][a] = (wa * dist[a][k] + wb * dist[b][k]) / (wa + wb);
    }
    members[a].insert(members[a].end(), members[b].begin(), members[b].end());
    alive[b] = 0;
  }
  return out;
}

PhyloTree tree_from_ultrametric(const DissimilarityVector& u, double tol) {
  check_vector(u);
  const int p = u.size();
  if (p < 2) throw ArgumentError("tree_from_ultrametric: needs at least two leaves");
  for (double e : u.entries) {
    if (!std::isfinite(e) || e < -tol) throw ArgumentError("tree_from_ultrametric: negative or non-finite entry");
  }
  if (!is_ultrametric(u, tol)) throw NotInFanError("tree_from_ultrametric: input is not an ultrametric");

  std::vector<PhyloNode> nodes(p);
  std::vector<double> height(p, 0.0);
  for (int i = 0; i < p; ++i) nodes[i].label = u.labels[i];

  std::vector<int> uf(p);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
  std::vector<int> cluster_node(p);
  std::iota(cluster_node.begin(), cluster_node.end(), 0);

  struct Pair {
    double value;
    int i;
    int j;
  };
  std::vector<Pair> pairs;
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) pairs.push_back({std::max(0.0, u.at(i, j)), i, j});
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.value < b.value; });

  for (std::size_t s = 0; s < pairs.size();) {
    const double level = pairs[s].value;
    std::size_t e = s;
    while (e < pairs.size() && pairs[e].value <= level + tol) ++e;

    std::vector<int> before;
    for (std::size_t k = s; k < e; ++k) {
      const int a = find(pairs[k].i);
      const int b = find(pairs[k].j);
      if (a == b) continue;
      before.push_back(a);
      before.push_back(b);
    }
    std::sort(before.begin(), before.end());
    before.erase(std::unique(before.begin(), before.end()), before.end());
    std::vector<int> old_node(p, -1);
    for (int r : before) old_node[r] = cluster_node[r];
    for (std::size_t k = s; k < e; ++k) {
      const int a = find(pairs[k].i);
      const int b = find(pairs[k].j);
      if (a != b) uf[std::max(a, b)] = std::min(a, b);
    }
    std::map<int, std::vector<int>> groups;
    for (int r : before) groups[find(r)].push_back(old_node[r]);
    for (auto& [rep, children] : groups) {
      double h = level / 2.0;
      for (int c : children) h = std::max(h, height[c]);
      const int index = static_cast<int>(nodes.size());
      nodes.push_back(PhyloNode{});
      height.push_back(h);
      for (int c : children) {
        nodes[c].parent = index;
        nodes[c].length = h - height[c];
        nodes[index].children.push_back(c);
      }
      cluster_node[rep] = index;
    }
    s = e;
  }
  const int root = cluster_node[find(0)];
  return PhyloTree(std::move(nodes), root);
}

DissimilarityVector translate_nonnegative(const DissimilarityVector& d) {
  check_vector(d);
  DissimilarityVector out = d;
  if (out.entries.empty()) return out;
  const double lo = *std::min_element(out.entries.begin(), out.entries.end());
  if (lo < 0) {
    for (double& e : out.entries) e -= lo;
  }
  return out;
}

double min_internal_branch_length(const PhyloTree& tree) {
  std::optional<double> best;
  for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
    const PhyloNode& n = tree.nodes()[i];
    if (static_cast<int>(i) == tree.root() || n.children.empty()) continue;
    if (!best || n.length < *best) best = n.length;
  }
  if (!best) throw DegenerateError("min_internal_branch_length: tree has no internal edge");
  return *best;
}

CladeSet topology_signature(const PhyloTree& tree) {
  const auto& nodes = tree.nodes();
  CladeSet out;
  std::function<Clade(int)> collect = [&](int v) -> Clade {
    if (nodes[v].children.empty()) return {nodes[v].label};
    Clade all;
    for (int c : nodes[v].children) {
      Clade sub = collect(c);
      all.insert(all.end(), sub.begin(), sub.end());
    }
    std::sort(all.begin(), all.end());
    if (v != tree.root()) out.insert(all);
    return all;
  };
  collect(tree.root());
  return out;
}

int rf_distance(const PhyloTree& a, const PhyloTree& b) {
  if (a.leaf_labels() != b.leaf_labels()) throw ArgumentError("rf_distance: trees have different leaf sets");
  const CladeSet ca = topology_signature(a);
  const CladeSet cb = topology_signature(b);
  int shared = 0;
  for (const Clade& c : ca) shared += static_cast<int>(cb.count(c));
  return static_cast<int>(ca.size() + cb.size()) - 2 * shared;
}

}  // namespace tropfw
