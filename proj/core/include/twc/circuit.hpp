#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "twc/util.hpp"

namespace twc {

using GateId = int;

enum class GateType : uint8_t { Var, And, Or, Not };

const char* gate_type_name(GateType t);

// Boolean valuation, possibly partial; keys are var-gate ids (or formula
// variable ids). std::map keeps iteration deterministic.
using Valuation = std::map<GateId, bool>;

// Gate DAG with a distinguished output. Gate ids are dense 0..n-1.
// Immutable after construction; use make() which checks the invariants.
struct Circuit {
  std::vector<GateType> types;
  std::vector<std::vector<GateId>> inputs;  // sorted per gate
  GateId output = -1;

  int size() const { return static_cast<int>(types.size()); }
  const std::vector<GateId>& var_gates() const { return var_gates_; }
  const std::vector<GateId>& topo_order() const { return topo_; }
  // position of a var gate in var_gates(), -1 for non-var gates
  int var_index(GateId g) const { return var_index_[g]; }

  // Validates: ids dense, wires acyclic, NOT fan-in 1, var fan-in 0,
  // output a declared gate.
  static Circuit make(std::vector<GateType> types,
                      const std::vector<std::pair<GateId, GateId>>& wires, GateId output);

 private:
  std::vector<GateId> var_gates_;
  std::vector<GateId> topo_;
  std::vector<int> var_index_;
};

// Evaluates the output gate. Fan-in-0 AND means constant 1, fan-in-0 OR
// constant 0. Throws missing_variable if valuation is not total on C_var.
bool evaluate(const Circuit& c, const Valuation& valuation);

// Evaluates 64 valuations at once: word bit t corresponds to one valuation,
// var_words[i] holds the 64 values of var_gates()[i].
uint64_t evaluate_block(const Circuit& c, const std::vector<uint64_t>& var_words);

// Truth table over the circuit's var gates in var_gates() order: bit index
// packs var i into bit position i (LSB first). Limited to <= 26 variables.
Bitset circuit_truth_table(const Circuit& c);

// Vertex/edge incidence structure; edges are non-empty vertex sets and there
// is at least one edge.
struct Hypergraph {
  int num_vertices = 0;
  std::vector<std::vector<int>> edges;  // each sorted

  int arity() const;
  int degree() const;
  std::vector<std::vector<int>> incident_edges() const;  // vertex -> edge indices

  static Hypergraph make(int num_vertices, std::vector<std::vector<int>> edges);
};

enum class FormulaKind : uint8_t { Dnf, Cnf };

// Minimized monotone CNF/DNF. Construction sorts clauses, collapses
// duplicates and drops subsumed clauses.
struct MonotoneFormula {
  FormulaKind kind = FormulaKind::Dnf;
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;  // sorted vars, sorted clause list

  int arity() const { return arity_; }
  int degree() const { return degree_; }

  bool eval(const std::vector<uint8_t>& assignment) const;

  static MonotoneFormula make(FormulaKind kind, int num_vars,
                              std::vector<std::vector<int>> clauses);

 private:
  int arity_ = 0;
  int degree_ = 0;
};

Hypergraph hypergraph_of(const MonotoneFormula& phi);

// Wire graph of the circuit as a hypergraph: one 2-edge per wire, plus a
// singleton edge per isolated gate so that decompositions cover every gate.
Hypergraph circuit_skeleton(const Circuit& c);

struct FormulaCircuit {
  Circuit circuit;
  std::vector<GateId> var_gate;     // formula variable -> var gate (identity)
  std::vector<GateId> clause_gate;  // clause index -> gate
  GateId output;
};

// One var gate per variable, one AND (DNF) / OR (CNF) gate per clause, and an
// OR (DNF) / AND (CNF) output gate.
FormulaCircuit formula_to_circuit(const MonotoneFormula& phi);

// --- text formats ---

// "circuit <n_gates> <output_id>" then one line per gate:
// "<id> <var|and|or|not> <input ids...>"
Circuit parse_circuit(std::istream& in);
std::string write_circuit(const Circuit& c);

// DIMACS "p cnf V C" with positive literals only, plus the symmetric
// "p dnf V C" extension.
MonotoneFormula parse_dimacs(std::istream& in);
std::string write_dimacs(const MonotoneFormula& phi);

}  // namespace twc
