#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "twc/circuit.hpp"

namespace twc {

// Rooted labeled tree over the vertices of some subject (hypergraph or
// circuit gate graph). A path decomposition is the special case where the
// tree is a chain.
struct TreeDecomposition {
  std::vector<std::vector<int>> bags;  // sorted vertex sets
  std::vector<int> parent;             // -1 for root
  std::vector<std::vector<int>> children;
  int root = 0;

  int node_count() const { return static_cast<int>(bags.size()); }
  int width() const;
  std::vector<int> preorder() const;   // root first
  std::vector<int> postorder() const;  // children before parents

  static TreeDecomposition make(std::vector<std::vector<int>> bags, std::vector<int> parent);
};

struct ValidationResult {
  bool ok = true;
  std::string message;  // first violated condition with witness
};

// Checks: every subject vertex is in some bag, every hyperedge is inside
// some bag, and per-vertex occurrences form a connected subtree.
ValidationResult validate(const TreeDecomposition& td, const Hypergraph& subject);

// Nice form: full binary tree, b subseteq b_l cup b_r for internal bags,
// leaf bags hold <= 1 vertex, |b \ parent(b)| <= 1, root holds <= 1 vertex.
struct NiceTreeDecomposition {
  TreeDecomposition tree;
  // responsibility: bag -> var gate whose topmost occurrence is that bag,
  // or -1. Filled by root_for_compile.
  std::vector<int> responsible;

  int width() const { return tree.width(); }
};

// Checks the five nice-form conditions; reports the first violation.
ValidationResult check_nice(const NiceTreeDecomposition& nice);

// Nice-form normalization: binarize, introduce one vertex at a time,
// forget-chains, fill to a full binary tree. Preserves width exactly and
// produces O(width x nodes) bags. Requires width(td) <= k.
NiceTreeDecomposition make_nice(const TreeDecomposition& td, int k);

// Re-roots so the root bag is exactly {output} and computes responsibility
// for every var gate. The result satisfies all nice conditions.
NiceTreeDecomposition root_for_compile(const NiceTreeDecomposition& nice, const Circuit& circuit,
                                       GateId output);

// Min-fill elimination heuristic; ties break on the lowest vertex id.
TreeDecomposition minfill(const Hypergraph& subject);

// Exact width by dynamic programming over vertex subsets; pathwidth uses the
// vertex-separation characterization. Both limited to <= 20 vertices.
int exact_treewidth(const Hypergraph& subject);
int exact_pathwidth(const Hypergraph& subject);

// Path decomposition with bags {i-window..i}; valid for any graph whose
// edges span at most `window` positions.
TreeDecomposition interval_decomposition(int n_vertices, int window);

// PACE 2017 .td format (1-based vertices and bag ids).
TreeDecomposition parse_pace_td(std::istream& in);
std::string write_pace_td(const TreeDecomposition& td, int n_vertices);

}  // namespace twc
