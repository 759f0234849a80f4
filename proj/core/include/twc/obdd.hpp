#pragma once

#include <string>
#include <vector>

#include "twc/circuit.hpp"
#include "twc/util.hpp"

namespace twc {

// Reduced layered decision diagram for a fixed variable order. Node ids 0
// and 1 are the constant leaves. Width counts the distinct residual
// functions per prefix; the primary figure excludes constant residuals and
// the with-constants variant is reported alongside.
struct Obdd {
  std::vector<int> order;  // variable ids in read order

  struct Node {
    int var;  // -1 for leaves
    int lo;
    int hi;
  };
  std::vector<Node> nodes;  // [0] = false leaf, [1] = true leaf
  int root = 0;

  std::vector<int> level_width;             // per prefix 0..n, non-constant residuals
  std::vector<int> level_width_with_const;  // same, counting constant residuals

  int width() const;
  int width_with_const() const;
  // node count: internal nodes plus reachable leaves
  int size() const;
};

// Truth-table backend, limited to 26 variables. `order` must be a
// permutation of the function's variables (var-gate positions for circuits,
// variable ids for formulas).
Obdd obdd_build(const MonotoneFormula& phi, const std::vector<int>& order);
Obdd obdd_build(const Circuit& c, const std::vector<int>& order);

bool obdd_eval(const Obdd& o, const std::vector<uint8_t>& assignment);

struct BestOrder {
  std::vector<int> order;
  int width = 0;
};

enum class OrderSearch {
  Exhaustive,  // exact minimum over all orders, <= 10 variables
  Greedy,      // split-guided ordering
};

BestOrder best_order(const MonotoneFormula& phi, OrderSearch mode);

// De Morgan dual: flips edge labels and leaf labels; captures the source
// formula with AND/OR swapped. Size and level profile are unchanged.
Obdd dualize(const Obdd& o);

// text dump: order line, node lines, leaf lines
std::string write_obdd(const Obdd& o);
// JSON per-level width profile
std::string obdd_profile_json(const Obdd& o);

}  // namespace twc
