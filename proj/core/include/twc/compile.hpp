#pragma once

#include <optional>
#include <vector>

#include "twc/circuit.hpp"
#include "twc/decomp.hpp"
#include "twc/nnf.hpp"
#include "twc/vtree.hpp"

namespace twc {

// A gate-input value is strong when it alone determines the gate's output:
// 0 for AND, 1 for OR, both for NOT, neither for var gates.
bool value_strong_for(GateType gate, bool value);

// nu respects strong values on the bag: whenever an in-bag input carries a
// strong value, the gate carries the determined value.
bool is_almost_evaluation(const Circuit& c, const std::vector<GateId>& bag, const Valuation& nu);

// Gates of the bag carrying a strong value with no in-bag input justifying
// it. nu must be an almost-evaluation on the bag.
std::vector<GateId> unjustified(const Circuit& c, const std::vector<GateId>& bag,
                                const Valuation& nu);

// Suspicious gates must survive into the parent bag.
bool connectible(const std::vector<GateId>& suspicious, const std::vector<GateId>& parent_bag);

struct EvalPair {
  Valuation nu;
  std::vector<GateId> suspicious;  // sorted
};

// Combines two child almost-evaluations at an internal bag. Throws bad_input
// if nu_l and nu_r disagree on a shared gate; returns nullopt (incompatible)
// when the combined assignment violates strong values.
std::optional<EvalPair> result_of(const Circuit& c, const std::vector<GateId>& bag,
                                  const std::vector<GateId>& left_bag, const EvalPair& left,
                                  const std::vector<GateId>& right_bag, const EvalPair& right);

struct CompileOptions {
  bool gc = true;  // drop gates unreachable from the output
};

struct CompileStats {
  int width = 0;
  int bag_count = 0;
  int vars = 0;
  long gates_created = 0;
  long gates_after_gc = 0;
  bool gc = true;
  double wall_ms = 0.0;
};

struct CompileResult {
  Nnf nnf;
  VTree vtree;
  CompileStats stats;
};

// The bottom-up construction: bounded-treewidth circuit plus rooted nice
// decomposition to an equivalent d-SDNNF with its structuring v-tree.
// NNF variable i stands for circuit var gate var_gates()[i].
// Requires the root bag to be exactly {circuit.output} (see
// root_for_compile) and the decomposition to validate against the circuit.
CompileResult compile_circuit(const Circuit& c, const NiceTreeDecomposition& nice,
                              const CompileOptions& options = {});

}  // namespace twc
