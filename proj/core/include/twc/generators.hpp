#pragma once

#include <utility>
#include <vector>

#include "twc/circuit.hpp"
#include "twc/util.hpp"

namespace twc {

// SINT_n = (x1 & y1) | ... | (xn & yn) as a monotone DNF.
// Variables interleave: x_i = 2(i-1), y_i = 2(i-1)+1.
MonotoneFormula gen_sint(int n);

// (x1 | y1) & ... & (xn | yn) as a monotone CNF, same variable layout.
MonotoneFormula gen_sdisj(int n);

// Monotone CNF whose hypergraph is the rows x cols grid graph: one 2-clause
// per grid edge, variable r*cols + c per cell. Requires rows, cols >= 2.
MonotoneFormula gen_grid_cnf(int rows, int cols);

// Lineage of the "two facts sharing one element" query over an undirected
// graph: one variable per edge, one 2-clause per pair of distinct edges with
// exactly one common endpoint. Requires at least one such pair.
MonotoneFormula gen_lineage_qp(const std::vector<std::pair<int, int>>& graph_edges);

struct RandomCircuitParams {
  int num_vars = 12;
  int num_gates = 30;  // total gates including vars
  int window = 3;      // inputs reach at most this far back
  int not_percent = 15;
};

// Random circuit whose wires stay inside a sliding window over the gate
// sequence, so interval_decomposition(size, window) is always valid and has
// width == window.
Circuit gen_random_circuit(SplitMix64& rng, const RandomCircuitParams& params);

}  // namespace twc
