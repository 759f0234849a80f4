#include "twc/generators.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace twc {

MonotoneFormula gen_sint(int n) {
  if (n < 1) fail(Errc::degenerate_input, "gen_sint requires n >= 1");
  std::vector<std::vector<int>> clauses;
  for (int i = 0; i < n; ++i) clauses.push_back({2 * i, 2 * i + 1});
  return MonotoneFormula::make(FormulaKind::Dnf, 2 * n, std::move(clauses));
}

MonotoneFormula gen_sdisj(int n) {
  if (n < 1) fail(Errc::degenerate_input, "gen_sdisj requires n >= 1");
  std::vector<std::vector<int>> clauses;
  for (int i = 0; i < n; ++i) clauses.push_back({2 * i, 2 * i + 1});
  return MonotoneFormula::make(FormulaKind::Cnf, 2 * n, std::move(clauses));
}

MonotoneFormula gen_grid_cnf(int rows, int cols) {
  if (rows < 2 || cols < 2) fail(Errc::degenerate_input, "gen_grid_cnf requires rows,cols >= 2");
  std::vector<std::vector<int>> clauses;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) clauses.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) clauses.push_back({id(r, c), id(r + 1, c)});
    }
  return MonotoneFormula::make(FormulaKind::Cnf, rows * cols, std::move(clauses));
}

MonotoneFormula gen_lineage_qp(const std::vector<std::pair<int, int>>& graph_edges) {
  std::set<std::pair<int, int>> dedup;
  for (auto [u, v] : graph_edges) {
    if (u == v) fail(Errc::degenerate_input, "gen_lineage_qp: self-loop in input graph");
    if (u < 0 || v < 0) fail(Errc::degenerate_input, "gen_lineage_qp: negative vertex id");
    dedup.insert({std::min(u, v), std::max(u, v)});
  }
  std::vector<std::pair<int, int>> edges(dedup.begin(), dedup.end());
  const int m = static_cast<int>(edges.size());
  std::vector<std::vector<int>> clauses;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      auto [a, b] = edges[i];
      auto [c, d] = edges[j];
      int shared = (a == c) + (a == d) + (b == c) + (b == d);
      // the x != z atom: the two facts must share exactly one element
      if (shared == 1) clauses.push_back({i, j});
    }
  if (clauses.empty())
    fail(Errc::degenerate_input, "gen_lineage_qp: graph has no two edges sharing one endpoint");
  return MonotoneFormula::make(FormulaKind::Dnf, m, std::move(clauses));
}

Circuit gen_random_circuit(SplitMix64& rng, const RandomCircuitParams& params) {
  const int n = params.num_gates;
  const int nv = params.num_vars;
  const int w = params.window;
  if (nv < 1 || n < nv + 1 || w < 1)
    fail(Errc::degenerate_input, "gen_random_circuit: need num_vars >= 1, gates > vars, window >= 1");

  // spread the var gates over the sequence so every window can reach one
  std::vector<bool> is_var(n, false);
  for (int i = 0; i < nv; ++i) {
    int pos = static_cast<int>((static_cast<long>(i) * (n - 1)) / nv);
    is_var[pos] = true;
  }
  is_var[n - 1] = false;  // output is an internal gate
  int have = 0;
  for (int i = 0; i < n; ++i) have += is_var[i];
  for (int i = 0; have < nv; ++i)
    if (!is_var[i] && i != n - 1) {
      is_var[i] = true;
      ++have;
    }

  std::vector<GateType> types(n);
  std::vector<std::pair<GateId, GateId>> wires;
  for (int i = 0; i < n; ++i) {
    if (is_var[i]) {
      types[i] = GateType::Var;
      continue;
    }
    int reach = std::min(w, i);
    if (reach == 0) {
      // gate 0 forced internal: make it a constant
      types[i] = rng.below(2) ? GateType::And : GateType::Or;
      continue;
    }
    bool make_not = static_cast<int>(rng.below(100)) < params.not_percent;
    if (make_not) {
      types[i] = GateType::Not;
      wires.push_back({i - 1 - static_cast<int>(rng.below(reach)), i});
      continue;
    }
    types[i] = rng.below(2) ? GateType::And : GateType::Or;
    int fanin = std::min(reach, rng.below(4) == 0 ? 3 : 2);
    std::set<int> picked;
    while (static_cast<int>(picked.size()) < fanin)
      picked.insert(i - 1 - static_cast<int>(rng.below(reach)));
    for (int s : picked) wires.push_back({s, i});
  }
  return Circuit::make(std::move(types), wires, n - 1);
}

}  // namespace twc
