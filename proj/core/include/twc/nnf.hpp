#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "twc/circuit.hpp"
#include "twc/util.hpp"
#include "twc/vtree.hpp"

namespace twc {

using BigInt = boost::multiprecision::cpp_int;

// NNF DAG: negations only on variables. Children always refer to
// lower-numbered nodes, so node order is a topological order.
struct Nnf {
  enum class Kind : uint8_t { True, False, Lit, And, Or };

  struct Node {
    Kind kind;
    int var = -1;         // Lit only
    bool positive = true; // Lit only
    std::vector<int> children;
  };

  std::vector<Node> nodes;
  int root = -1;
  int num_vars = 0;  // variable universe 0..num_vars-1

  int size() const { return static_cast<int>(nodes.size()); }

  int add_true();
  int add_false();
  int add_lit(int var, bool positive);
  int add_and(std::vector<int> children);
  int add_or(std::vector<int> children);
};

// per-node variable scopes VARS(g)
std::vector<Bitset> nnf_scopes(const Nnf& d);

bool nnf_eval(const Nnf& d, const std::vector<uint8_t>& assignment);

struct CheckResult {
  bool ok = true;
  std::string witness;
};

// well-formedness: child ids valid and below the node, literal vars in range
CheckResult check_nnf(const Nnf& d);
// every AND has pairwise disjoint child scopes
CheckResult check_decomposable(const Nnf& d);
// some v-tree node structures every AND with >= 1 inputs
CheckResult check_structured(const Nnf& d, const VTree& vt);
// exhaustive determinism check over the used variables; witness names an OR
// gate and a valuation satisfying two of its inputs
CheckResult check_deterministic_exhaustive(const Nnf& d, int max_vars = 16);
// randomized fallback beyond the exhaustive cap; a pass is evidence, not proof
CheckResult check_deterministic_sampled(const Nnf& d, int samples, uint64_t seed);

// bottom-up weighted count; requires decomposability, determinism assumed.
// pi maps every used variable to a probability in [0,1].
double probability(const Nnf& d, const std::map<int, double>& pi);

// exact satisfying-valuation count over the num_vars universe
BigInt model_count(const Nnf& d);

// compressed assignment: determined true vars, determined false vars,
// everything else don't-care
struct Model {
  Bitset pos;  // determined true
  Bitset det;  // determined at all

  // sorted true vars, "v*" marks for don't-cares, 1-based
  std::string to_line() const;
};

// DFS over accepting traces, memoized satisfiability, polynomial delay.
// The sink returns false to stop early.
void enumerate_models(const Nnf& d, const std::function<bool(const Model&)>& sink);
std::vector<Model> all_models(const Nnf& d);

// literals over the domain of `partial` become constants, constants
// propagate, unary AND/OR collapse
Nnf restrict_nnf(const Nnf& d, const Valuation& partial);

// 2-level NNF of a monotone formula (no determinism or structure claimed)
Nnf nnf_from_formula(const MonotoneFormula& phi);

// exhaustive function equality over the union universe
bool nnf_equivalent_exhaustive(const Nnf& a, const Nnf& b, int max_vars = 20);
bool nnf_circuit_equivalent_exhaustive(const Nnf& d, const Circuit& c, int max_vars = 20);

// c2d-style text format: "nnf <nodes> <edges> <vars>" then L/A/O lines
Nnf parse_c2d(std::istream& in);
std::string write_c2d(const Nnf& d);

}  // namespace twc
