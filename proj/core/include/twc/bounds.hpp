#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twc/circuit.hpp"
#include "twc/decomp.hpp"
#include "twc/util.hpp"
#include "twc/vtree.hpp"

namespace twc {

// Edges split by the first i order positions: an edge is split when it has a
// vertex at or before position i and a vertex strictly after. Returns edge
// indices; i ranges over 1..|V| and spl_{|V|} is empty.
std::vector<int> split_at_prefix(const Hypergraph& h, const std::vector<int>& order, int i);

// max split size over all prefixes of the order
int psw(const std::vector<int>& order, const Hypergraph& h);

struct ExactOrderResult {
  int width = 0;
  std::vector<int> order;
};

// minimum pathsplitwidth over all orders, <= 12 vertices (subset DP)
ExactOrderResult psw_exact(const Hypergraph& h);

// Edges with a vertex inside the leaves of the subtree at `node` and a
// vertex outside.
std::vector<int> split_at_vtree_node(const Hypergraph& h, const VTree& vt, int node);

// max split size over all v-tree nodes
int tsw(const VTree& vt, const Hypergraph& h);

struct ExactVtreeResult {
  int width = 0;
  VTree vtree;
};

// minimum treesplitwidth over all v-trees, <= 8 vertices (subset DP over
// leaf sets, equivalent to enumerating every v-tree shape)
ExactVtreeResult tsw_exact(const Hypergraph& h);

// Graph on the edges of H: two distinct edges are adjacent when some edge
// intersects both (distance <= 4 in the incidence graph).
struct ExclusionGraph {
  int n = 0;                // number of hyperedges
  std::vector<Bitset> adj;  // per edge

  int degree() const;
};

ExclusionGraph exclusion_graph(const Hypergraph& h);

// Pick the lowest-id vertex of the subset, delete its closed neighborhood,
// repeat. Output size >= floor(|subset| / (degree(G)+1)).
std::vector<int> greedy_mis(const ExclusionGraph& g, const std::vector<int>& subset);

// dncpi-set extraction: greedy MIS restricted to the edges split at the
// max-split position, plus the shattering witness.
struct DncpiResult {
  std::vector<int> clauses;  // indices into phi.clauses, sorted
  int witness_prefix = -1;   // order mode: prefix length
  int witness_node = -1;     // v-tree mode: node id
  // per clause of `clauses`: variables inside/outside the witness cut
  std::vector<std::pair<std::vector<int>, std::vector<int>>> side_split;
  int max_split = 0;  // achieved split size at the witness
};

DncpiResult extract_dncpi(const MonotoneFormula& phi, const std::vector<int>& order);
DncpiResult extract_dncpi(const MonotoneFormula& phi, const VTree& vt);

// both Def. dncpi bullets by brute subset scan
ValidationResult verify_dncpi(const MonotoneFormula& phi, const std::vector<int>& clauses);

struct SintRestriction {
  Valuation nu;                           // domain: all vars except the picked pairs
  std::vector<std::pair<int, int>> pairs; // (x_i, y_i) per clause of the set
};

// Partial valuation turning a DNF into SINT_{|S|} over the picked pairs
// (remaining set variables to 1, everything else to 0); for a CNF both
// polarities dualize and the result is (x1|y1)&...&(xn|yn). Clauses must
// cross the witness cut.
SintRestriction sint_restriction(const MonotoneFormula& phi, const DncpiResult& dncpi);

// constructions connecting split measures to decompositions
TreeDecomposition path_decomp_from_order(const std::vector<int>& order, const Hypergraph& h);
TreeDecomposition tree_decomp_from_vtree(const VTree& vt, const Hypergraph& h);
std::vector<int> order_from_path_decomp(const TreeDecomposition& path, const Hypergraph& h);

// order greedily minimizing the running split size (lowest id on ties)
std::vector<int> greedy_split_order(const Hypergraph& h);

struct BoundsReport {
  int n = 0;
  int m = 0;
  int arity = 0;
  int degree = 0;
  std::optional<int> pw_exact;
  std::optional<int> tw_exact;
  std::optional<int> psw_exact;
  std::optional<int> tsw_exact;
  // heuristic upper bounds, reported when the exact solvers are over cap
  std::optional<int> psw_upper;
  std::optional<int> tsw_upper;
  std::optional<int> obdd_min_width;
  int dncpi_max = 0;
  long long theorem_obddlower_floor = 0;   // 2^floor(pw / a^3 d^2)
  long long theorem_dsdnnflower_floor = 0; // 2^floor(tw / 3 a^3 d^2) - 1
  std::optional<long> compiled_dsdnnf_size;
  std::vector<std::string> notices;  // skipped fields with reasons
  bool obdd_floor_violated = false;
  bool obdd_upper_violated = false;  // min width vs 2^(pw+2)
  bool dsdnnf_floor_violated = false;
};

struct BoundsOptions {
  int exact_vertex_cap = 20;      // pw/tw DP cap
  int psw_exact_cap = 12;
  int tsw_exact_cap = 8;
  int obdd_exhaustive_cap = 10;
  bool with_compile = true;       // measure compiled d-SDNNF size
};

BoundsReport bounds_report(const MonotoneFormula& phi, const BoundsOptions& options = {});
std::string bounds_report_json(const BoundsReport& report);

}  // namespace twc
