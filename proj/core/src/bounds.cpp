#include "twc/bounds.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <map>

#include <json.hpp>

#include "twc/compile.hpp"
#include "twc/obdd.hpp"

namespace twc {

namespace {

// per-edge vertex bitsets
std::vector<Bitset> edge_masks(const Hypergraph& h) {
  std::vector<Bitset> masks;
  masks.reserve(h.edges.size());
  for (const auto& e : h.edges) {
    Bitset m(h.num_vertices);
    for (int v : e) m.set(v);
    masks.push_back(std::move(m));
  }
  return masks;
}

// split of a vertex subset: edges intersecting it without being contained
std::vector<int> split_of_set(const Hypergraph& h, const Bitset& inside) {
  std::vector<int> out;
  for (size_t e = 0; e < h.edges.size(); ++e) {
    bool in = false, outside = false;
    for (int v : h.edges[e]) (inside.test(v) ? in : outside) = true;
    if (in && outside) out.push_back(static_cast<int>(e));
  }
  return out;
}

int split_count_mask(const std::vector<uint32_t>& edge_bits, uint32_t inside, uint32_t universe) {
  int c = 0;
  for (uint32_t e : edge_bits)
    if ((e & inside) && (e & universe & ~inside)) ++c;
  return c;
}

}  // namespace

std::vector<int> split_at_prefix(const Hypergraph& h, const std::vector<int>& order, int i) {
  if (i < 1 || i > static_cast<int>(order.size()))
    fail(Errc::bad_input, "prefix length out of range");
  Bitset inside(h.num_vertices);
  for (int j = 0; j < i; ++j) inside.set(order[j]);
  return split_of_set(h, inside);
}

int psw(const std::vector<int>& order, const Hypergraph& h) {
  int best = 0;
  Bitset inside(h.num_vertices);
  for (size_t i = 0; i < order.size(); ++i) {
    inside.set(order[i]);
    best = std::max(best, static_cast<int>(split_of_set(h, inside).size()));
  }
  return best;
}

ExactOrderResult psw_exact(const Hypergraph& h) {
  const int n = h.num_vertices;
  if (n > 12) fail(Errc::size_limit, "psw_exact limited to 12 vertices");
  std::vector<uint32_t> edge_bits;
  for (const auto& e : h.edges) {
    uint32_t m = 0;
    for (int v : e) m |= 1u << v;
    edge_bits.push_back(m);
  }
  const uint32_t full = n == 0 ? 0 : (1u << n) - 1;
  std::vector<int> cut(full + 1);
  for (uint32_t s = 0; s <= full; ++s) cut[s] = split_count_mask(edge_bits, s, full);
  std::vector<int> g(full + 1, 0);
  for (uint32_t s = full; s-- > 0;) {
    int best = std::numeric_limits<int>::max();
    for (int v = 0; v < n; ++v) {
      if ((s >> v) & 1) continue;
      uint32_t t = s | (1u << v);
      best = std::min(best, std::max(cut[t], g[t]));
    }
    g[s] = best;
  }
  ExactOrderResult out;
  out.width = n == 0 ? 0 : g[0];
  uint32_t chosen = 0;
  while (chosen != full) {
    for (int v = 0; v < n; ++v) {
      if ((chosen >> v) & 1) continue;
      uint32_t t = chosen | (1u << v);
      if (std::max(cut[t], g[t]) <= out.width) {
        out.order.push_back(v);
        chosen = t;
        break;
      }
    }
  }
  return out;
}

std::vector<int> split_at_vtree_node(const Hypergraph& h, const VTree& vt, int node) {
  auto below = vt.leaves_below();
  Bitset inside(h.num_vertices);
  below[node].for_each([&](int v) {
    if (v < h.num_vertices) inside.set(v);
  });
  return split_of_set(h, inside);
}

int tsw(const VTree& vt, const Hypergraph& h) {
  auto below = vt.leaves_below();
  int best = 0;
  for (size_t node = 0; node < vt.nodes.size(); ++node) {
    Bitset inside(h.num_vertices);
    below[node].for_each([&](int v) {
      if (v < h.num_vertices) inside.set(v);
    });
    best = std::max(best, static_cast<int>(split_of_set(h, inside).size()));
  }
  return best;
}

namespace {

// builds the v-tree realizing the DP partition choices
int build_best_vtree(uint32_t set, const std::vector<uint32_t>& best_part, VTree& vt) {
  if (__builtin_popcount(set) == 1) return vt.add_leaf(__builtin_ctz(set));
  int node = vt.add_node();
  int l = build_best_vtree(best_part[set], best_part, vt);
  int r = build_best_vtree(set & ~best_part[set], best_part, vt);
  vt.attach(node, l);
  vt.attach(node, r);
  return node;
}

}  // namespace

ExactVtreeResult tsw_exact(const Hypergraph& h) {
  const int n = h.num_vertices;
  if (n > 8) fail(Errc::size_limit, "tsw_exact limited to 8 vertices");
  if (n < 1) fail(Errc::bad_input, "empty hypergraph");
  std::vector<uint32_t> edge_bits;
  for (const auto& e : h.edges) {
    uint32_t m = 0;
    for (int v : e) m |= 1u << v;
    edge_bits.push_back(m);
  }
  const uint32_t full = (1u << n) - 1;

  // best[S] = min over v-trees with leaf set S of the max split strictly
  // inside (split(S) itself is charged at S's node)
  std::vector<int> best(full + 1, std::numeric_limits<int>::max());
  std::vector<uint32_t> best_part(full + 1, 0);
  std::vector<int> split(full + 1);
  for (uint32_t s = 1; s <= full; ++s) split[s] = split_count_mask(edge_bits, s, full);
  // iterate by popcount implicitly: submasks of s are < s numerically
  for (uint32_t s = 1; s <= full; ++s) {
    if (__builtin_popcount(s) == 1) {
      best[s] = split[s];
      continue;
    }
    // enumerate partitions (a, s\a) with a containing the lowest bit to
    // dedupe mirror shapes; ascending a keeps ties deterministic
    uint32_t low = s & (~s + 1);
    for (uint32_t a = (s - 1) & s; a; a = (a - 1) & s) {
      if (!(a & low)) continue;
      if (a == s) continue;
      uint32_t b = s & ~a;
      int cand = std::max(best[a], best[b]);
      if (cand < best[s]) {
        best[s] = cand;
        best_part[s] = a;
      }
    }
    best[s] = std::max(best[s], split[s]);
  }

  ExactVtreeResult out;
  out.width = best[full];  // split[full] = 0
  out.vtree.num_vars = n;
  out.vtree.root = build_best_vtree(full, best_part, out.vtree);
  return out;
}

int ExclusionGraph::degree() const {
  int d = 0;
  for (const auto& a : adj) d = std::max(d, a.count());
  return d;
}

ExclusionGraph exclusion_graph(const Hypergraph& h) {
  const int m = static_cast<int>(h.edges.size());
  auto masks = edge_masks(h);
  // touching[e] = edges sharing a vertex with e (e itself included)
  std::vector<Bitset> touching(m, Bitset(m));
  for (int e = 0; e < m; ++e)
    for (int f = 0; f < m; ++f)
      if (masks[e].intersects(masks[f])) touching[e].set(f);
  ExclusionGraph g;
  g.n = m;
  g.adj.assign(m, Bitset(m));
  for (int e = 0; e < m; ++e)
    for (int f = e + 1; f < m; ++f)
      if (touching[e].intersects(touching[f])) {
        g.adj[e].set(f);
        g.adj[f].set(e);
      }
  return g;
}

std::vector<int> greedy_mis(const ExclusionGraph& g, const std::vector<int>& subset) {
  Bitset work(g.n);
  for (int v : subset) work.set(v);
  std::vector<int> out;
  while (work.any()) {
    int v = work.find_first();
    out.push_back(v);
    work.reset(v);
    g.adj[v].for_each([&](int u) { work.reset(u); });
  }
  return out;
}

namespace {

DncpiResult extract_from_split(const MonotoneFormula& phi, const std::vector<int>& split_edges,
                               const Bitset& inside) {
  DncpiResult out;
  out.max_split = static_cast<int>(split_edges.size());
  ExclusionGraph g = exclusion_graph(hypergraph_of(phi));
  out.clauses = greedy_mis(g, split_edges);
  std::sort(out.clauses.begin(), out.clauses.end());
  for (int ci : out.clauses) {
    std::vector<int> in, outp;
    for (int v : phi.clauses[ci]) (inside.test(v) ? in : outp).push_back(v);
    out.side_split.push_back({in, outp});
  }
  return out;
}

}  // namespace

DncpiResult extract_dncpi(const MonotoneFormula& phi, const std::vector<int>& order) {
  Hypergraph h = hypergraph_of(phi);
  int best_i = 1, best_size = -1;
  for (int i = 1; i <= static_cast<int>(order.size()); ++i) {
    int size = static_cast<int>(split_at_prefix(h, order, i).size());
    if (size > best_size) {
      best_size = size;
      best_i = i;
    }
  }
  Bitset inside(h.num_vertices);
  for (int j = 0; j < best_i; ++j) inside.set(order[j]);
  DncpiResult out = extract_from_split(phi, split_at_prefix(h, order, best_i), inside);
  out.witness_prefix = best_i;
  return out;
}

DncpiResult extract_dncpi(const MonotoneFormula& phi, const VTree& vt) {
  Hypergraph h = hypergraph_of(phi);
  auto below = vt.leaves_below();
  int best_node = vt.root, best_size = -1;
  for (size_t node = 0; node < vt.nodes.size(); ++node) {
    Bitset inside(h.num_vertices);
    below[node].for_each([&](int v) {
      if (v < h.num_vertices) inside.set(v);
    });
    int size = static_cast<int>(split_of_set(h, inside).size());
    if (size > best_size) {
      best_size = size;
      best_node = static_cast<int>(node);
    }
  }
  Bitset inside(h.num_vertices);
  below[best_node].for_each([&](int v) {
    if (v < h.num_vertices) inside.set(v);
  });
  DncpiResult out = extract_from_split(phi, split_of_set(h, inside), inside);
  out.witness_node = best_node;
  return out;
}

ValidationResult verify_dncpi(const MonotoneFormula& phi, const std::vector<int>& clauses) {
  const int nv = phi.num_vars;
  Bitset uni(nv);
  for (size_t a = 0; a < clauses.size(); ++a) {
    Bitset m(nv);
    for (int v : phi.clauses[clauses[a]]) m.set(v);
    if (uni.intersects(m))
      return {false, "clauses are not pairwise disjoint (clause " +
                         std::to_string(clauses[a]) + " overlaps an earlier one)"};
    uni |= m;
  }
  for (size_t c = 0; c < phi.clauses.size(); ++c) {
    if (std::binary_search(clauses.begin(), clauses.end(), static_cast<int>(c))) continue;
    bool contained = true;
    for (int v : phi.clauses[c]) contained = contained && uni.test(v);
    if (contained)
      return {false, "clause " + std::to_string(c) + " lies inside the union but is not a member"};
  }
  return {true, ""};
}

SintRestriction sint_restriction(const MonotoneFormula& phi, const DncpiResult& dncpi) {
  SintRestriction out;
  Bitset in_set(phi.num_vars);
  for (size_t i = 0; i < dncpi.clauses.size(); ++i) {
    const auto& [inside, outside] = dncpi.side_split[i];
    if (phi.clauses[dncpi.clauses[i]].size() < 2)
      fail(Errc::degenerate_input, "dncpi clause has fewer than 2 variables");
    if (inside.empty() || outside.empty())
      fail(Errc::degenerate_input, "dncpi clause does not cross the witness cut");
    out.pairs.push_back({inside.front(), outside.front()});
    for (int v : phi.clauses[dncpi.clauses[i]]) in_set.set(v);
  }
  Bitset picked(phi.num_vars);
  for (auto [x, y] : out.pairs) {
    picked.set(x);
    picked.set(y);
  }
  // DNF: remaining set variables to 1 so each D_i shrinks to x_i & y_i, and
  // everything else to 0 so the other clauses die. CNF dualizes both.
  const bool dnf = phi.kind == FormulaKind::Dnf;
  for (int v = 0; v < phi.num_vars; ++v) {
    if (picked.test(v)) continue;
    out.nu[v] = dnf ? in_set.test(v) : !in_set.test(v);
  }
  return out;
}

TreeDecomposition path_decomp_from_order(const std::vector<int>& order, const Hypergraph& h) {
  std::vector<std::vector<int>> bags;
  std::vector<int> parent;
  Bitset inside(h.num_vertices);
  for (size_t i = 0; i < order.size(); ++i) {
    inside.set(order[i]);
    std::vector<int> bag{order[i]};
    for (int e : split_of_set(h, inside))
      for (int v : h.edges[e]) bag.push_back(v);
    bags.push_back(bag);
    parent.push_back(i == 0 ? -1 : static_cast<int>(i) - 1);
  }
  return TreeDecomposition::make(std::move(bags), std::move(parent));
}

TreeDecomposition tree_decomp_from_vtree(const VTree& vt, const Hypergraph& h) {
  auto below = vt.leaves_below();
  auto split_union = [&](int node) {
    std::vector<int> out;
    Bitset inside(h.num_vertices);
    below[node].for_each([&](int v) {
      if (v < h.num_vertices) inside.set(v);
    });
    for (int e : split_of_set(h, inside))
      for (int v : h.edges[e]) out.push_back(v);
    return out;
  };
  std::vector<std::vector<int>> bags(vt.nodes.size());
  std::vector<int> parent(vt.nodes.size());
  for (size_t node = 0; node < vt.nodes.size(); ++node) {
    parent[node] = vt.nodes[node].parent;
    if (vt.nodes[node].var >= 0) {
      bags[node] = {vt.nodes[node].var};
      continue;
    }
    std::vector<int> bag = split_union(static_cast<int>(node));
    for (int c : vt.nodes[node].child)
      if (c >= 0) {
        auto cs = split_union(c);
        bag.insert(bag.end(), cs.begin(), cs.end());
      }
    bags[node] = bag;
  }
  return TreeDecomposition::make(std::move(bags), std::move(parent));
}

std::vector<int> order_from_path_decomp(const TreeDecomposition& path, const Hypergraph& h) {
  // walk the path from the root, listing vertices at first appearance
  std::vector<int> order;
  Bitset seen(h.num_vertices);
  int b = path.root;
  while (b >= 0) {
    for (int v : path.bags[b])
      if (!seen.test(v)) {
        seen.set(v);
        order.push_back(v);
      }
    if (path.children[b].size() > 1)
      fail(Errc::bad_input, "not a path decomposition");
    b = path.children[b].empty() ? -1 : path.children[b][0];
  }
  for (int v = 0; v < h.num_vertices; ++v)
    if (!seen.test(v)) order.push_back(v);
  return order;
}

std::vector<int> greedy_split_order(const Hypergraph& h) {
  const int n = h.num_vertices;
  std::vector<int> order;
  Bitset inside(n);
  for (int step = 0; step < n; ++step) {
    int best = -1, best_split = std::numeric_limits<int>::max();
    for (int v = 0; v < n; ++v) {
      if (inside.test(v)) continue;
      inside.set(v);
      int s = static_cast<int>(split_of_set(h, inside).size());
      inside.reset(v);
      if (s < best_split) {
        best_split = s;
        best = v;
      }
    }
    inside.set(best);
    order.push_back(best);
  }
  return order;
}

BoundsReport bounds_report(const MonotoneFormula& phi, const BoundsOptions& options) {
  BoundsReport r;
  Hypergraph h = hypergraph_of(phi);
  r.n = phi.num_vars;
  r.m = static_cast<int>(phi.clauses.size());
  r.arity = phi.arity();
  r.degree = phi.degree();

  if (r.n <= options.exact_vertex_cap) {
    r.pw_exact = exact_pathwidth(h);
    r.tw_exact = exact_treewidth(h);
  } else {
    r.notices.push_back("pw_exact/tw_exact skipped: more than " +
                        std::to_string(options.exact_vertex_cap) + " vertices");
  }
  if (r.n <= options.psw_exact_cap) {
    r.psw_exact = psw_exact(h).width;
  } else {
    r.psw_upper = psw(greedy_split_order(h), h);
    r.notices.push_back("psw_exact skipped: more than " + std::to_string(options.psw_exact_cap) +
                        " vertices; psw_upper is the greedy-order value");
  }
  if (r.n <= options.tsw_exact_cap) {
    r.tsw_exact = tsw_exact(h).width;
  } else {
    r.tsw_upper = tsw(balanced_vtree(greedy_split_order(h)), h);
    r.notices.push_back("tsw_exact skipped: more than " + std::to_string(options.tsw_exact_cap) +
                        " vertices; tsw_upper uses a balanced v-tree over the greedy order");
  }
  if (r.n <= options.obdd_exhaustive_cap)
    r.obdd_min_width = best_order(phi, OrderSearch::Exhaustive).width;
  else
    r.notices.push_back("obdd_min_width skipped: more than " +
                        std::to_string(options.obdd_exhaustive_cap) + " vertices");

  // largest dncpi-set over the exact witnesses we have
  {
    std::vector<int> order = r.n <= options.psw_exact_cap ? psw_exact(h).order
                                                          : greedy_split_order(h);
    DncpiResult from_order = extract_dncpi(phi, order);
    r.dncpi_max = static_cast<int>(from_order.clauses.size());
    if (r.n <= options.tsw_exact_cap) {
      DncpiResult from_vtree = extract_dncpi(phi, tsw_exact(h).vtree);
      r.dncpi_max = std::max(r.dncpi_max, static_cast<int>(from_vtree.clauses.size()));
    }
  }

  const long long a = r.arity, d = r.degree;
  if (r.pw_exact)
    r.theorem_obddlower_floor = 1LL << (*r.pw_exact / (a * a * a * d * d));
  if (r.tw_exact)
    r.theorem_dsdnnflower_floor = (1LL << (*r.tw_exact / (3 * a * a * a * d * d))) - 1;

  if (options.with_compile) {
    FormulaCircuit fc = formula_to_circuit(phi);
    TreeDecomposition td = minfill(circuit_skeleton(fc.circuit));
    NiceTreeDecomposition nice = make_nice(td, td.width());
    NiceTreeDecomposition rooted = root_for_compile(nice, fc.circuit, fc.output);
    CompileResult res = compile_circuit(fc.circuit, rooted);
    r.compiled_dsdnnf_size = res.stats.gates_after_gc;
  }

  if (r.obdd_min_width && r.pw_exact) {
    r.obdd_floor_violated = *r.obdd_min_width < r.theorem_obddlower_floor;
    r.obdd_upper_violated = *r.obdd_min_width > (1LL << (*r.pw_exact + 2));
  }
  if (r.compiled_dsdnnf_size && r.tw_exact)
    r.dsdnnf_floor_violated = *r.compiled_dsdnnf_size < r.theorem_dsdnnflower_floor;
  return r;
}

std::string bounds_report_json(const BoundsReport& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["arity"] = r.arity;
  j["degree"] = r.degree;
  if (r.pw_exact) j["pw_exact"] = *r.pw_exact;
  if (r.tw_exact) j["tw_exact"] = *r.tw_exact;
  if (r.psw_exact) j["psw_exact"] = *r.psw_exact;
  if (r.tsw_exact) j["tsw_exact"] = *r.tsw_exact;
  if (r.psw_upper) j["psw_upper"] = *r.psw_upper;
  if (r.tsw_upper) j["tsw_upper"] = *r.tsw_upper;
  if (r.obdd_min_width) j["obdd_min_width"] = *r.obdd_min_width;
  j["dncpi_max"] = r.dncpi_max;
  j["theorem_obddlower_floor"] = r.theorem_obddlower_floor;
  j["theorem_dsdnnflower_floor"] = r.theorem_dsdnnflower_floor;
  if (r.compiled_dsdnnf_size) j["compiled_dsdnnf_size"] = *r.compiled_dsdnnf_size;
  if (!r.notices.empty()) j["notices"] = r.notices;
  j["violations"] = nlohmann::json::object();
  j["violations"]["obdd_floor"] = r.obdd_floor_violated;
  j["violations"]["obdd_upper"] = r.obdd_upper_violated;
  j["violations"]["dsdnnf_floor"] = r.dsdnnf_floor_violated;
  return j.dump(2);
}

}  // namespace twc
