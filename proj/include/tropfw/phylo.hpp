#pragma once

// Rooted phylogenetic trees, Newick text, and dissimilarity vectors.

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tropfw/tropical.hpp"

namespace tropfw {

struct PhyloNode {
  std::string label;  // required on leaves, optional on internal nodes
  double length = 0.0;  // branch to the parent; ignored at the root
  int parent = -1;
  std::vector<int> children;
};

// Rooted leaf-labelled tree with nonnegative branch lengths. Every internal
// node has at least two children and leaf labels are distinct.
class PhyloTree {
 public:
  PhyloTree() = default;

  // Validates the invariants; nodes[root].parent must be -1.
  PhyloTree(std::vector<PhyloNode> nodes, int root);

  int root() const noexcept { return root_; }
  const std::vector<PhyloNode>& nodes() const noexcept { return nodes_; }
  const PhyloNode& node(int i) const { return nodes_.at(i); }
  bool is_leaf(int i) const { return nodes_.at(i).children.empty(); }

  std::size_t leaf_count() const;
  std::vector<std::string> leaf_labels() const;  // sorted

 private:
  std::vector<PhyloNode> nodes_;
  int root_ = -1;
};

/// Parses one `;`-terminated tree. Non-root branch lengths are required; a
/// missing root length is 0. Nodes with one child are merged into their
/// child. Throws ParseError carrying a byte offset.
PhyloTree parse_newick(std::string_view text);

/// Reads one tree per non-blank line.
std::vector<PhyloTree> read_newick_file(const std::filesystem::path& path);

/// Children ordered by the smallest leaf label below them; lengths in the
/// shortest decimal form that reads back to the same double.
std::string write_newick(const PhyloTree& tree);

std::string format_number(double value);

// Pairwise dissimilarities of p labelled points, flattened in lexicographic
// (i, j), i < j order.
struct DissimilarityVector {
  std::vector<std::string> labels;
  std::vector<double> entries;

  int size() const noexcept { return static_cast<int>(labels.size()); }
  double at(int i, int j) const;
  TropicalPoint as_point() const { return TropicalPoint(entries); }
  static DissimilarityVector from_point(std::vector<std::string> labels, const TropicalPoint& x);
};

// "A".."Z" for p <= 26, otherwise "L1".."Lp".
std::vector<std::string> default_labels(int p);

/// Header row of `i|j` labels, then one vector per row.
void write_dissimilarity_csv(std::ostream& out, const std::vector<DissimilarityVector>& vectors);
std::vector<DissimilarityVector> read_dissimilarity_csv(std::istream& in);

/// Path-length metric of the tree, labels sorted.
DissimilarityVector cophenetic_vector(const PhyloTree& tree);

bool is_ultrametric(const DissimilarityVector& d, double tol = 1e-9);
bool is_tree_metric(const DissimilarityVector& d, double tol = 1e-9);

/// Subdominant ultrametric (minimax path weights).
DissimilarityVector single_linkage(const DissimilarityVector& d);

/// UPGMA cophenetic ultrametric. Comparator only; it is not a projection.
DissimilarityVector average_linkage(const DissimilarityVector& d);

/// Equidistant tree with cophenetic vector u: a node at height h/2 for each
/// distinct level h, merging every cluster joined at that level. Throws
/// NotInFanError for non-ultrametric input and ArgumentError for negative entries.
PhyloTree tree_from_ultrametric(const DissimilarityVector& u, double tol = 1e-9);

/// Adds -min(entries) when some entry is negative. Only pendant edges change.
DissimilarityVector translate_nonnegative(const DissimilarityVector& d);

/// Shortest branch above a non-root internal node. Throws DegenerateError for a star tree.
double min_internal_branch_length(const PhyloTree& tree);

// Clades of size >= 2 other than the full leaf set, each as sorted labels.
using Clade = std::vector<std::string>;
using CladeSet = std::set<Clade>;

CladeSet topology_signature(const PhyloTree& tree);

/// Rooted Robinson-Foulds distance: size of the symmetric difference of the
/// clade sets. Unrooted RF counts splits instead and differs by convention.
int rf_distance(const PhyloTree& a, const PhyloTree& b);

}  // namespace tropfw
