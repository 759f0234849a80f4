#pragma once

// Independent reference implementations used as test oracles. These
// deliberately avoid the library's evaluation and width machinery: formulas
// are evaluated by clause semantics, circuits by recursive descent, widths
// by explicit enumeration over all orders / v-trees / prefix valuations.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "twc/circuit.hpp"
#include "twc/nnf.hpp"
#include "twc/vtree.hpp"

namespace oracle {

// clause-semantics evaluation; bit v of `mask` is the value of variable v
inline bool eval_formula(const twc::MonotoneFormula& phi, uint32_t mask) {
  if (phi.kind == twc::FormulaKind::Dnf) {
    for (const auto& cl : phi.clauses) {
      bool all = true;
      for (int v : cl) all = all && ((mask >> v) & 1);
      if (all) return true;
    }
    return false;
  }
  for (const auto& cl : phi.clauses) {
    bool any = false;
    for (int v : cl) any = any || ((mask >> v) & 1);
    if (!any) return false;
  }
  return true;
}

// recursive circuit evaluation; bit i of `mask` is the value of var_gates()[i]
inline bool eval_circuit(const twc::Circuit& c, uint32_t mask) {
  std::vector<int8_t> memo(c.size(), -1);
  auto rec = [&](auto&& self, int g) -> bool {
    if (memo[g] >= 0) return memo[g];
    bool r;
    switch (c.types[g]) {
      case twc::GateType::Var: r = (mask >> c.var_index(g)) & 1; break;
      case twc::GateType::And: {
        r = true;
        for (int s : c.inputs[g]) r = r && self(self, s);
        break;
      }
      case twc::GateType::Or: {
        r = false;
        for (int s : c.inputs[g]) r = r || self(self, s);
        break;
      }
      case twc::GateType::Not: r = !self(self, c.inputs[g][0]); break;
    }
    memo[g] = r;
    return r;
  };
  return rec(rec, c.output);
}

inline bool eval_nnf(const twc::Nnf& d, uint32_t mask) {
  std::vector<int8_t> memo(d.size(), -1);
  auto rec = [&](auto&& self, int n) -> bool {
    if (memo[n] >= 0) return memo[n];
    const auto& node = d.nodes[n];
    bool r = false;
    switch (node.kind) {
      case twc::Nnf::Kind::True: r = true; break;
      case twc::Nnf::Kind::False: r = false; break;
      case twc::Nnf::Kind::Lit: r = node.positive == static_cast<bool>((mask >> node.var) & 1); break;
      case twc::Nnf::Kind::And: {
        r = true;
        for (int ch : node.children) r = r && self(self, ch);
        break;
      }
      case twc::Nnf::Kind::Or: {
        r = false;
        for (int ch : node.children) r = r || self(self, ch);
        break;
      }
    }
    memo[n] = r;
    return r;
  };
  return rec(rec, d.root);
}

inline std::set<uint32_t> circuit_models(const twc::Circuit& c) {
  std::set<uint32_t> out;
  const int nv = static_cast<int>(c.var_gates().size());
  for (uint32_t m = 0; m < (1u << nv); ++m)
    if (eval_circuit(c, m)) out.insert(m);
  return out;
}

inline std::set<uint32_t> formula_models(const twc::MonotoneFormula& phi) {
  std::set<uint32_t> out;
  for (uint32_t m = 0; m < (1u << phi.num_vars); ++m)
    if (eval_formula(phi, m)) out.insert(m);
  return out;
}

inline long long count_formula(const twc::MonotoneFormula& phi) {
  return static_cast<long long>(formula_models(phi).size());
}

inline double prob_circuit(const twc::Circuit& c, const std::map<int, double>& pi) {
  const int nv = static_cast<int>(c.var_gates().size());
  double total = 0.0;
  for (uint32_t m = 0; m < (1u << nv); ++m) {
    if (!eval_circuit(c, m)) continue;
    double p = 1.0;
    for (int i = 0; i < nv; ++i) {
      double pv = pi.at(i);
      p *= ((m >> i) & 1) ? pv : 1.0 - pv;
    }
    total += p;
  }
  return total;
}

// expansion of a compressed model into full variable masks
inline void expand_model(const twc::Model& m, int num_vars, std::set<uint32_t>& into) {
  std::vector<int> free_vars;
  uint32_t base = 0;
  for (int v = 0; v < num_vars; ++v) {
    if (!m.det.test(v))
      free_vars.push_back(v);
    else if (m.pos.test(v))
      base |= 1u << v;
  }
  for (uint32_t f = 0; f < (1u << free_vars.size()); ++f) {
    uint32_t x = base;
    for (size_t i = 0; i < free_vars.size(); ++i)
      if ((f >> i) & 1) x |= 1u << free_vars[i];
    into.insert(x);
  }
}

// --- width oracles ---

// distinct residual truth tables after enumerating every valuation of the
// first `i` order variables; returns {non-constant count, total count}
inline std::pair<int, int> obdd_level_oracle(const twc::MonotoneFormula& phi,
                                             const std::vector<int>& order, int i) {
  const int n = phi.num_vars;
  std::vector<int> rest(order.begin() + i, order.end());
  std::set<std::vector<char>> residuals;
  int nonconst = 0;
  std::set<std::vector<char>> seen_all;
  for (uint32_t p = 0; p < (1u << i); ++p) {
    uint32_t base = 0;
    for (int j = 0; j < i; ++j)
      if ((p >> j) & 1) base |= 1u << order[j];
    std::vector<char> tab;
    for (uint32_t r = 0; r < (1u << rest.size()); ++r) {
      uint32_t m = base;
      for (size_t j = 0; j < rest.size(); ++j)
        if ((r >> j) & 1) m |= 1u << rest[j];
      tab.push_back(eval_formula(phi, m));
    }
    bool is_const = std::all_of(tab.begin(), tab.end(), [&](char x) { return x == tab[0]; });
    if (seen_all.insert(tab).second && !is_const) ++nonconst;
  }
  (void)n;
  return {nonconst, static_cast<int>(seen_all.size())};
}

inline int obdd_width_oracle(const twc::MonotoneFormula& phi, const std::vector<int>& order) {
  int w = 0;
  for (int i = 0; i <= static_cast<int>(order.size()); ++i)
    w = std::max(w, obdd_level_oracle(phi, order, i).first);
  return w;
}

inline int obdd_min_width_oracle(const twc::MonotoneFormula& phi) {
  std::vector<int> order(phi.num_vars);
  for (int i = 0; i < phi.num_vars; ++i) order[i] = i;
  int best = std::numeric_limits<int>::max();
  do
    best = std::min(best, obdd_width_oracle(phi, order));
  while (std::next_permutation(order.begin(), order.end()));
  return best;
}

inline int split_size(const twc::Hypergraph& h, const std::set<int>& inside) {
  int c = 0;
  for (const auto& e : h.edges) {
    bool in = false, out = false;
    for (int v : e) (inside.count(v) ? in : out) = true;
    if (in && out) ++c;
  }
  return c;
}

inline int psw_of_order_oracle(const twc::Hypergraph& h, const std::vector<int>& order) {
  int w = 0;
  std::set<int> inside;
  for (int v : order) {
    inside.insert(v);
    w = std::max(w, split_size(h, inside));
  }
  return w;
}

inline int psw_min_oracle(const twc::Hypergraph& h) {
  std::vector<int> order(h.num_vertices);
  for (int i = 0; i < h.num_vertices; ++i) order[i] = i;
  int best = std::numeric_limits<int>::max();
  do
    best = std::min(best, psw_of_order_oracle(h, order));
  while (std::next_permutation(order.begin(), order.end()));
  return best;
}

// all unordered leaf-labeled binary tree shapes over `leaves`, as lists of
// leaf sets (one set per node); enough to measure splits
inline void all_vtree_nodesets(const std::vector<int>& leaves,
                               std::vector<std::vector<std::set<int>>>& out) {
  if (leaves.size() == 1) {
    out.push_back({{leaves[0]}});
    return;
  }
  // split off subsets containing leaves[0] to dedupe mirrored shapes
  const int n = static_cast<int>(leaves.size());
  for (uint32_t mask = 1; mask < (1u << n) - 1; ++mask) {
    if (!(mask & 1)) continue;
    std::vector<int> left, right;
    for (int i = 0; i < n; ++i) ((mask >> i) & 1 ? left : right).push_back(leaves[i]);
    std::vector<std::vector<std::set<int>>> ls, rs;
    all_vtree_nodesets(left, ls);
    all_vtree_nodesets(right, rs);
    for (const auto& l : ls)
      for (const auto& r : rs) {
        std::vector<std::set<int>> tree = l;
        tree.insert(tree.end(), r.begin(), r.end());
        std::set<int> root(leaves.begin(), leaves.end());
        tree.push_back(root);
        out.push_back(tree);
      }
  }
}

inline int tsw_min_oracle(const twc::Hypergraph& h) {
  std::vector<int> leaves(h.num_vertices);
  for (int i = 0; i < h.num_vertices; ++i) leaves[i] = i;
  std::vector<std::vector<std::set<int>>> trees;
  all_vtree_nodesets(leaves, trees);
  int best = std::numeric_limits<int>::max();
  for (const auto& tree : trees) {
    int w = 0;
    for (const auto& node_set : tree) w = std::max(w, split_size(h, node_set));
    best = std::min(best, w);
  }
  return best;
}

// brute-force treewidth: min over elimination orders of the max clique made
inline int treewidth_oracle(const twc::Hypergraph& h) {
  const int n = h.num_vertices;
  std::vector<std::set<int>> base(n);
  for (const auto& e : h.edges)
    for (size_t i = 0; i < e.size(); ++i)
      for (size_t j = i + 1; j < e.size(); ++j) {
        base[e[i]].insert(e[j]);
        base[e[j]].insert(e[i]);
      }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  int best = std::numeric_limits<int>::max();
  do {
    auto adj = base;
    int w = 0;
    for (int v : order) {
      w = std::max(w, static_cast<int>(adj[v].size()));
      std::vector<int> nb(adj[v].begin(), adj[v].end());
      for (size_t i = 0; i < nb.size(); ++i)
        for (size_t j = i + 1; j < nb.size(); ++j) {
          adj[nb[i]].insert(nb[j]);
          adj[nb[j]].insert(nb[i]);
        }
      for (int u : nb) adj[u].erase(v);
      adj[v].clear();
      if (w >= best) break;
    }
    best = std::min(best, w);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

// brute-force pathwidth via vertex separation over all orders
inline int pathwidth_oracle(const twc::Hypergraph& h) {
  const int n = h.num_vertices;
  std::vector<std::set<int>> adj(n);
  for (const auto& e : h.edges)
    for (size_t i = 0; i < e.size(); ++i)
      for (size_t j = i + 1; j < e.size(); ++j) {
        adj[e[i]].insert(e[j]);
        adj[e[j]].insert(e[i]);
      }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  int best = std::numeric_limits<int>::max();
  do {
    std::set<int> prefix;
    int w = 0;
    for (int v : order) {
      prefix.insert(v);
      int b = 0;
      for (int u : prefix)
        for (int x : adj[u])
          if (!prefix.count(x)) {
            ++b;
            break;
          }
      w = std::max(w, b);
    }
    best = std::min(best, w);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace oracle
