#include "twc/decomp.hpp"

#include <algorithm>
#include <cassert>
#include <istream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace twc {

int TreeDecomposition::width() const {
  size_t w = 0;
  for (const auto& b : bags) w = std::max(w, b.size());
  return static_cast<int>(w) - 1;
}

std::vector<int> TreeDecomposition::preorder() const {
  std::vector<int> order;
  order.reserve(bags.size());
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int b = stack.back();
    stack.pop_back();
    order.push_back(b);
    for (auto it = children[b].rbegin(); it != children[b].rend(); ++it) stack.push_back(*it);
  }
  return order;
}

std::vector<int> TreeDecomposition::postorder() const {
  std::vector<int> order = preorder();
  std::reverse(order.begin(), order.end());
  return order;
}

TreeDecomposition TreeDecomposition::make(std::vector<std::vector<int>> bags,
                                          std::vector<int> parent) {
  TreeDecomposition td;
  const int n = static_cast<int>(bags.size());
  if (n == 0) fail(Errc::invalid_decomposition, "decomposition has no bags");
  if (static_cast<int>(parent.size()) != n)
    fail(Errc::invalid_decomposition, "parent array size mismatch");
  td.bags = std::move(bags);
  for (auto& b : td.bags) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }
  td.parent = std::move(parent);
  td.children.assign(n, {});
  td.root = -1;
  for (int i = 0; i < n; ++i) {
    if (td.parent[i] < 0) {
      if (td.root >= 0) fail(Errc::invalid_decomposition, "more than one root");
      td.root = i;
    } else {
      if (td.parent[i] >= n) fail(Errc::invalid_decomposition, "parent id out of range");
      td.children[td.parent[i]].push_back(i);
    }
  }
  if (td.root < 0) fail(Errc::invalid_decomposition, "no root");
  if (static_cast<int>(td.preorder().size()) != n)
    fail(Errc::invalid_decomposition, "bag tree is not connected");
  return td;
}

ValidationResult validate(const TreeDecomposition& td, const Hypergraph& subject) {
  const int n = td.node_count();
  std::vector<std::vector<int>> occ(subject.num_vertices);
  for (int b = 0; b < n; ++b)
    for (int v : td.bags[b]) {
      if (v < 0 || v >= subject.num_vertices)
        return {false, "bag " + std::to_string(b) + " contains unknown vertex " +
                           std::to_string(v)};
      occ[v].push_back(b);
    }

  for (int v = 0; v < subject.num_vertices; ++v)
    if (occ[v].empty())
      return {false, "vertex " + std::to_string(v) + " appears in no bag"};

  for (size_t e = 0; e < subject.edges.size(); ++e) {
    const auto& edge = subject.edges[e];
    bool covered = false;
    for (int b = 0; b < n && !covered; ++b)
      covered = std::includes(td.bags[b].begin(), td.bags[b].end(), edge.begin(), edge.end());
    if (!covered) {
      std::string s;
      for (int v : edge) s += (s.empty() ? "" : ",") + std::to_string(v);
      return {false, "edge {" + s + "} is covered by no bag"};
    }
  }

  // connectivity: occurrences of v must form one subtree
  for (int v = 0; v < subject.num_vertices; ++v) {
    std::vector<bool> has(n, false);
    for (int b : occ[v]) has[b] = true;
    // count occurrence-nodes whose parent also holds v; connected iff
    // exactly one occurrence lacks such a parent (the subtree root)
    int roots = 0;
    for (int b : occ[v])
      if (td.parent[b] < 0 || !has[td.parent[b]]) ++roots;
    if (roots != 1)
      return {false, "vertex " + std::to_string(v) + " occurs in " + std::to_string(roots) +
                         " disconnected subtrees"};
  }
  return {true, ""};
}

ValidationResult check_nice(const NiceTreeDecomposition& nice) {
  const TreeDecomposition& t = nice.tree;
  for (int b = 0; b < t.node_count(); ++b) {
    size_t nc = t.children[b].size();
    if (nc != 0 && nc != 2)
      return {false, "bag " + std::to_string(b) + " has " + std::to_string(nc) + " children"};
    if (nc == 0 && t.bags[b].size() > 1)
      return {false, "leaf bag " + std::to_string(b) + " holds more than one vertex"};
    if (nc == 2) {
      std::vector<int> uni;
      const auto& l = t.bags[t.children[b][0]];
      const auto& r = t.bags[t.children[b][1]];
      std::set_union(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(uni));
      if (!std::includes(uni.begin(), uni.end(), t.bags[b].begin(), t.bags[b].end()))
        return {false, "bag " + std::to_string(b) + " not contained in union of children"};
    }
    if (t.parent[b] >= 0) {
      const auto& p = t.bags[t.parent[b]];
      std::vector<int> diff;
      std::set_difference(t.bags[b].begin(), t.bags[b].end(), p.begin(), p.end(),
                          std::back_inserter(diff));
      if (diff.size() > 1)
        return {false, "bag " + std::to_string(b) + " forgets " + std::to_string(diff.size()) +
                           " vertices at once"};
    }
  }
  if (t.bags[t.root].size() > 1) return {false, "root bag holds more than one vertex"};
  return {true, ""};
}

namespace {

// mutable tree used by the nice-form passes
struct Builder {
  std::vector<std::vector<int>> bags;
  std::vector<int> parent;
  std::vector<std::vector<int>> children;
  int root;

  explicit Builder(const TreeDecomposition& td)
      : bags(td.bags), parent(td.parent), children(td.children), root(td.root) {}

  int add(std::vector<int> bag, int par) {
    bags.push_back(std::move(bag));
    parent.push_back(par);
    children.emplace_back();
    if (par >= 0) children[par].push_back(static_cast<int>(bags.size()) - 1);
    return static_cast<int>(bags.size()) - 1;
  }

  // makes `child` point to `new_parent` (removing it from the old parent)
  void reattach(int child, int new_parent) {
    int old = parent[child];
    if (old >= 0) {
      auto& cs = children[old];
      cs.erase(std::find(cs.begin(), cs.end(), child));
    }
    parent[child] = new_parent;
    if (new_parent >= 0) children[new_parent].push_back(child);
  }

  TreeDecomposition finish() const {
    return TreeDecomposition::make(bags, parent);
  }
};

void pass_binarize(Builder& t) {
  for (int b = 0; b < static_cast<int>(t.bags.size()); ++b) {
    while (t.children[b].size() > 2) {
      // keep the first child, move the rest under a copy of b
      std::vector<int> rest(t.children[b].begin() + 1, t.children[b].end());
      int copy = t.add(t.bags[b], b);
      for (int c : rest)
        if (c != copy) t.reattach(c, copy);
    }
  }
}

void pass_introduce(Builder& t) {
  const int initial = static_cast<int>(t.bags.size());
  for (int b = 0; b < initial; ++b) {
    if (t.children[b].empty()) {
      // leaf: introduce its vertices one at a time
      std::vector<int> elems = t.bags[b];
      if (elems.size() <= 1) continue;
      int cur = b;  // holds elems[0..i]
      for (size_t i = elems.size(); i-- > 1;) {
        std::vector<int> sub(elems.begin(), elems.begin() + i);
        int chain = t.add(sub, cur);
        t.add({elems[i]}, cur);
        cur = chain;
      }
    } else {
      std::vector<int> uni;
      for (int c : t.children[b]) {
        std::vector<int> merged;
        std::set_union(uni.begin(), uni.end(), t.bags[c].begin(), t.bags[c].end(),
                       std::back_inserter(merged));
        uni = std::move(merged);
      }
      std::vector<int> extra;
      std::set_difference(t.bags[b].begin(), t.bags[b].end(), uni.begin(), uni.end(),
                          std::back_inserter(extra));
      if (extra.empty()) continue;
      // chain down from b removing the extra vertices one at a time; each
      // chain node introduces one of them via a leaf child
      std::vector<int> orig_children = t.children[b];
      int cur = b;
      std::vector<int> cur_bag = t.bags[b];
      for (size_t i = extra.size(); i-- > 0;) {
        t.add({extra[i]}, cur);
        std::vector<int> next_bag;
        std::set_difference(cur_bag.begin(), cur_bag.end(), extra.begin() + i,
                            extra.begin() + i + 1, std::back_inserter(next_bag));
        int next = t.add(next_bag, cur);
        if (i == 0) {
          for (int c : orig_children) t.reattach(c, next);
        } else {
          cur = next;
          cur_bag = std::move(next_bag);
        }
      }
    }
  }
}

void pass_forget_chains(Builder& t) {
  const int initial = static_cast<int>(t.bags.size());
  for (int b = 0; b < initial; ++b) {
    int p = t.parent[b];
    if (p < 0) continue;
    std::vector<int> gone;
    std::set_difference(t.bags[b].begin(), t.bags[b].end(), t.bags[p].begin(), t.bags[p].end(),
                        std::back_inserter(gone));
    if (gone.size() <= 1) continue;
    // intermediate bags between p and b forget one vertex at a time,
    // built top-down from p
    int attach = p;
    for (size_t i = 0; i + 1 < gone.size(); ++i) {
      std::vector<int> mid;
      std::set_difference(t.bags[b].begin(), t.bags[b].end(), gone.begin(),
                          gone.end() - (i + 1), std::back_inserter(mid));
      attach = t.add(mid, attach);
    }
    t.reattach(b, attach);
  }
}

void pass_root_chain(Builder& t, int keep) {
  // shrink the root bag one vertex at a time until one vertex remains
  // (`keep` survives when present)
  while (t.bags[t.root].size() > 1) {
    std::vector<int> rb = t.bags[t.root];
    int drop = -1;
    for (int v : rb)
      if (v != keep) drop = std::max(drop, v);
    std::vector<int> nb;
    for (int v : rb)
      if (v != drop) nb.push_back(v);
    int new_root = t.add(nb, -1);
    t.reattach(t.root, new_root);
    t.root = new_root;
  }
}

void pass_fill_binary(Builder& t) {
  const int initial = static_cast<int>(t.bags.size());
  for (int b = 0; b < initial; ++b)
    if (t.children[b].size() == 1) t.add({}, b);
}

NiceTreeDecomposition run_nice_passes(const TreeDecomposition& td, int keep_in_root) {
  Builder t(td);
  pass_binarize(t);
  pass_introduce(t);
  pass_forget_chains(t);
  pass_root_chain(t, keep_in_root);
  pass_fill_binary(t);
  NiceTreeDecomposition nice;
  nice.tree = t.finish();
  nice.responsible.assign(nice.tree.node_count(), -1);
  return nice;
}

}  // namespace

NiceTreeDecomposition make_nice(const TreeDecomposition& td, int k) {
  if (td.width() > k)
    fail(Errc::invalid_decomposition, "decomposition width " + std::to_string(td.width()) +
                                          " exceeds requested k=" + std::to_string(k));
  NiceTreeDecomposition nice = run_nice_passes(td, -1);
  assert(nice.tree.width() == td.width());
  assert(check_nice(nice).ok);
  return nice;
}

NiceTreeDecomposition root_for_compile(const NiceTreeDecomposition& nice, const Circuit& circuit,
                                       GateId output) {
  const TreeDecomposition& t = nice.tree;
  int hit = -1;
  for (int b = 0; b < t.node_count() && hit < 0; ++b)
    if (std::binary_search(t.bags[b].begin(), t.bags[b].end(), output)) hit = b;
  if (hit < 0) fail(Errc::invalid_decomposition, "output gate appears in no bag");

  // re-root the tree at the bag containing the output
  std::vector<int> parent(t.parent);
  std::vector<int> path;
  for (int b = hit; b >= 0; b = t.parent[b]) path.push_back(b);
  for (size_t i = 0; i + 1 < path.size(); ++i) parent[path[i + 1]] = path[i];
  parent[hit] = -1;
  TreeDecomposition rerooted = TreeDecomposition::make(t.bags, parent);

  // forget everything but the output above the new root, then re-normalize
  Builder b(rerooted);
  std::vector<int> rb = b.bags[b.root];
  while (rb.size() > 1) {
    int drop = -1;
    for (int v : rb)
      if (v != output) drop = std::max(drop, v);
    std::vector<int> nb;
    for (int v : rb)
      if (v != drop) nb.push_back(v);
    int new_root = b.add(nb, -1);
    b.reattach(b.root, new_root);
    b.root = new_root;
    rb = nb;
  }
  NiceTreeDecomposition out = run_nice_passes(b.finish(), output);
  assert(out.tree.bags[out.tree.root] == std::vector<int>{output});
  assert(out.tree.width() <= nice.tree.width());
  assert(check_nice(out).ok);

  // responsibility: topmost bag of each var gate, found where the gate is
  // not in the parent bag
  const TreeDecomposition& rt = out.tree;
  for (int bag = 0; bag < rt.node_count(); ++bag) {
    for (int g : rt.bags[bag]) {
      if (circuit.types[g] != GateType::Var) continue;
      bool in_parent =
          rt.parent[bag] >= 0 && std::binary_search(rt.bags[rt.parent[bag]].begin(),
                                                    rt.bags[rt.parent[bag]].end(), g);
      if (!in_parent) {
        assert(out.responsible[bag] < 0);
        out.responsible[bag] = g;
      }
    }
  }
  return out;
}

TreeDecomposition minfill(const Hypergraph& subject) {
  const int n = subject.num_vertices;
  if (n == 0) fail(Errc::bad_input, "empty subject");
  std::vector<std::set<int>> adj(n);
  for (const auto& e : subject.edges)
    for (size_t i = 0; i < e.size(); ++i)
      for (size_t j = i + 1; j < e.size(); ++j) {
        adj[e[i]].insert(e[j]);
        adj[e[j]].insert(e[i]);
      }

  std::vector<bool> gone(n, false);
  std::vector<std::vector<int>> bags;
  std::vector<int> elim_order;
  std::vector<int> elim_pos(n, -1);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    long best_fill = std::numeric_limits<long>::max();
    for (int v = 0; v < n; ++v) {
      if (gone[v]) continue;
      long fill = 0;
      std::vector<int> nb(adj[v].begin(), adj[v].end());
      for (size_t i = 0; i < nb.size(); ++i)
        for (size_t j = i + 1; j < nb.size(); ++j)
          if (!adj[nb[i]].count(nb[j])) ++fill;
      if (fill < best_fill) {
        best_fill = fill;
        best = v;
      }
    }
    std::vector<int> bag(adj[best].begin(), adj[best].end());
    bag.push_back(best);
    std::sort(bag.begin(), bag.end());
    bags.push_back(bag);
    elim_pos[best] = step;
    elim_order.push_back(best);
    std::vector<int> nb(adj[best].begin(), adj[best].end());
    for (size_t i = 0; i < nb.size(); ++i)
      for (size_t j = i + 1; j < nb.size(); ++j) {
        adj[nb[i]].insert(nb[j]);
        adj[nb[j]].insert(nb[i]);
      }
    for (int u : nb) adj[u].erase(best);
    adj[best].clear();
    gone[best] = true;
  }

  // clique-tree wiring: parent of bag i is the bag of the earliest-eliminated
  // vertex among bag_i \ {v_i}; the last bag is the root
  std::vector<int> parent(n, -1);
  for (int i = 0; i < n; ++i) {
    int v = elim_order[i];
    int nxt = std::numeric_limits<int>::max();
    for (int u : bags[i])
      if (u != v) nxt = std::min(nxt, elim_pos[u]);
    if (nxt != std::numeric_limits<int>::max())
      parent[i] = nxt;
    else if (i + 1 < n)
      parent[i] = i + 1;  // isolated component: chain to keep the tree connected
  }
  return TreeDecomposition::make(std::move(bags), std::move(parent));
}

namespace {

// neighbor masks of the primal graph
std::vector<uint64_t> primal_masks(const Hypergraph& h) {
  if (h.num_vertices > 20) fail(Errc::size_limit, "exact solvers limited to 20 vertices");
  std::vector<uint64_t> nbr(h.num_vertices, 0);
  for (const auto& e : h.edges)
    for (size_t i = 0; i < e.size(); ++i)
      for (size_t j = 0; j < e.size(); ++j)
        if (i != j) nbr[e[i]] |= 1ULL << e[j];
  return nbr;
}

}  // namespace

int exact_treewidth(const Hypergraph& subject) {
  const int n = subject.num_vertices;
  std::vector<uint64_t> nbr = primal_masks(subject);
  const uint64_t full = n == 64 ? ~0ULL : (1ULL << n) - 1;
  std::vector<int8_t> dp(static_cast<size_t>(1) << n, 0);
  // dp[S] = min over elimination orders of S (eliminated first) of the max
  // back-degree; Q(S, v) = vertices outside S∪{v} reachable from v through S
  auto q_size = [&](uint64_t s, int v) {
    uint64_t seen = 1ULL << v;
    uint64_t frontier = 1ULL << v;
    uint64_t reach_out = 0;
    while (frontier) {
      int u = __builtin_ctzll(frontier);
      frontier &= frontier - 1;
      uint64_t nb = nbr[u] & ~seen;
      reach_out |= nb & ~s;
      uint64_t through = nb & s;
      seen |= nb;
      frontier |= through;
    }
    return __builtin_popcountll(reach_out & ~(1ULL << v));
  };
  for (uint64_t s = 1; s <= full; ++s) {
    int best = std::numeric_limits<int>::max();
    uint64_t it = s;
    while (it) {
      int v = __builtin_ctzll(it);
      it &= it - 1;
      uint64_t rest = s & ~(1ULL << v);
      int cand = std::max<int>(dp[rest], q_size(rest, v));
      best = std::min(best, cand);
    }
    dp[s] = static_cast<int8_t>(best);
  }
  return dp[full];
}

int exact_pathwidth(const Hypergraph& subject) {
  const int n = subject.num_vertices;
  std::vector<uint64_t> nbr = primal_masks(subject);
  const uint64_t full = n == 64 ? ~0ULL : (1ULL << n) - 1;
  std::vector<int8_t> dp(static_cast<size_t>(1) << n, 0);
  auto boundary = [&](uint64_t s) {
    int c = 0;
    uint64_t it = s;
    while (it) {
      int v = __builtin_ctzll(it);
      it &= it - 1;
      if (nbr[v] & ~s) ++c;
    }
    return c;
  };
  for (uint64_t s = 1; s <= full; ++s) {
    int b = boundary(s);
    int best = std::numeric_limits<int>::max();
    uint64_t it = s;
    while (it) {
      int v = __builtin_ctzll(it);
      it &= it - 1;
      best = std::min(best, std::max<int>(dp[s & ~(1ULL << v)], b));
    }
    dp[s] = static_cast<int8_t>(best);
  }
  return dp[full];
}

TreeDecomposition interval_decomposition(int n_vertices, int window) {
  if (n_vertices < 1 || window < 1) fail(Errc::bad_input, "bad interval decomposition size");
  std::vector<std::vector<int>> bags;
  std::vector<int> parent;
  for (int i = 0; i < n_vertices; ++i) {
    std::vector<int> bag;
    for (int j = std::max(0, i - window); j <= i; ++j) bag.push_back(j);
    bags.push_back(bag);
    parent.push_back(i == 0 ? -1 : i - 1);
  }
  return TreeDecomposition::make(std::move(bags), std::move(parent));
}

TreeDecomposition parse_pace_td(std::istream& in) {
  std::string line;
  int n_bags = -1, n_vertices = -1;
  std::vector<std::vector<int>> bags;
  std::vector<std::pair<int, int>> tree_edges;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 's') {
      std::string s, td;
      int widthp1;
      if (!(ls >> s >> td >> n_bags >> widthp1 >> n_vertices) || td != "td")
        fail(Errc::parse_error, "line " + std::to_string(lineno) + ": expected 's td ...'");
      bags.assign(n_bags, {});
      continue;
    }
    if (line[0] == 'b') {
      char b;
      int id;
      ls >> b >> id;
      if (n_bags < 0 || id < 1 || id > n_bags)
        fail(Errc::parse_error, "line " + std::to_string(lineno) + ": bad bag id");
      int v;
      while (ls >> v) {
        if (v < 1 || v > n_vertices)
          fail(Errc::parse_error, "line " + std::to_string(lineno) + ": vertex out of range");
        bags[id - 1].push_back(v - 1);
      }
      continue;
    }
    int a, b;
    if (!(ls >> a >> b))
      fail(Errc::parse_error, "line " + std::to_string(lineno) + ": expected tree edge");
    if (a < 1 || a > n_bags || b < 1 || b > n_bags)
      fail(Errc::parse_error, "line " + std::to_string(lineno) + ": edge bag id out of range");
    tree_edges.push_back({a - 1, b - 1});
  }
  if (n_bags < 0) fail(Errc::parse_error, "missing 's td' header");

  // orient edges away from bag 0
  std::vector<std::vector<int>> adj(n_bags);
  for (auto [a, b] : tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> parent(n_bags, -2);
  std::vector<int> stack{0};
  parent[0] = -1;
  while (!stack.empty()) {
    int b = stack.back();
    stack.pop_back();
    for (int c : adj[b])
      if (parent[c] == -2) {
        parent[c] = b;
        stack.push_back(c);
      }
  }
  for (int b = 0; b < n_bags; ++b)
    if (parent[b] == -2) fail(Errc::parse_error, "bag tree is not connected");
  return TreeDecomposition::make(std::move(bags), std::move(parent));
}

std::string write_pace_td(const TreeDecomposition& td, int n_vertices) {
  std::ostringstream out;
  out << "s td " << td.node_count() << ' ' << td.width() + 1 << ' ' << n_vertices << '\n';
  for (int b = 0; b < td.node_count(); ++b) {
    out << "b " << b + 1;
    for (int v : td.bags[b]) out << ' ' << v + 1;
    out << '\n';
  }
  for (int b = 0; b < td.node_count(); ++b)
    if (td.parent[b] >= 0) out << td.parent[b] + 1 << ' ' << b + 1 << '\n';
  return out.str();
}

}  // namespace twc
