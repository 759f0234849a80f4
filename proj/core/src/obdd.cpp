#include "twc/obdd.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "twc/bounds.hpp"

namespace twc {

int Obdd::width() const {
  int w = 0;
  for (int x : level_width) w = std::max(w, x);
  return w;
}

int Obdd::width_with_const() const {
  int w = 0;
  for (int x : level_width_with_const) w = std::max(w, x);
  return w;
}

int Obdd::size() const {
  std::vector<uint8_t> seen(nodes.size(), 0);
  std::vector<int> stack{root};
  seen[root] = 1;
  int count = 0;
  while (!stack.empty()) {
    int n = stack.back();
    stack.pop_back();
    ++count;
    if (nodes[n].var < 0) continue;
    for (int next : {nodes[n].lo, nodes[n].hi})
      if (!seen[next]) {
        seen[next] = 1;
        stack.push_back(next);
      }
  }
  return count;
}

namespace {

// residual truth table: a slice of the global table. The global table packs
// valuations with order[0] as the most significant bit, so fixing a prefix
// selects a contiguous slice.
struct Slice {
  const std::vector<uint64_t>* words;
  uint64_t begin_bit;
  uint64_t len_bits;

  bool get(uint64_t i) const {
    uint64_t b = begin_bit + i;
    return ((*words)[b >> 6] >> (b & 63)) & 1;
  }
  bool is_const(bool* value) const {
    bool v0 = get(0);
    for (uint64_t i = 1; i < len_bits; ++i)
      if (get(i) != v0) return false;
    *value = v0;
    return true;
  }
  bool equal(const Slice& o) const {
    if (len_bits != o.len_bits) return false;
    for (uint64_t i = 0; i < len_bits; ++i)
      if (get(i) != o.get(i)) return false;
    return true;
  }
  uint64_t hash() const {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (uint64_t i = 0; i < len_bits; ++i) h = (h ^ get(i)) * 0x100000001b3ULL;
    return h;
  }
};

// reorders a truth table indexed by function-variable bit i into the
// msb-first layout of `order`
std::vector<uint64_t> reorder_table(const Bitset& table, const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  const uint64_t total = 1ULL << n;
  std::vector<uint64_t> out((total + 63) / 64, 0);
  for (uint64_t idx = 0; idx < total; ++idx) {
    // idx bits: position j (msb-first) = value of order[j]
    uint64_t src = 0;
    for (int j = 0; j < n; ++j)
      if ((idx >> (n - 1 - j)) & 1) src |= 1ULL << order[j];
    if (table.test(static_cast<int>(src))) out[idx >> 6] |= 1ULL << (idx & 63);
  }
  return out;
}

Obdd build_from_table(const Bitset& table, const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  if (n > 26) fail(Errc::size_limit, "obdd build limited to 26 variables");
  {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i)
      if (sorted[i] != i) fail(Errc::bad_input, "order is not a permutation of the variables");
  }

  Obdd o;
  o.order = order;
  o.nodes.push_back({-1, 0, 0});  // false
  o.nodes.push_back({-1, 1, 1});  // true

  std::vector<uint64_t> words = reorder_table(table, order);

  // canonical reduced nodes, memoized per (level, residual table)
  std::map<std::pair<int, uint64_t>, std::vector<std::pair<Slice, int>>> memo;
  std::map<std::tuple<int, int, int>, int> unique;  // (var, lo, hi) -> node

  // recursive build over slices, explicit stack not needed at n <= 26
  auto rec = [&](auto&& self, int level, uint64_t begin_bit) -> int {
    Slice s{&words, begin_bit, 1ULL << (n - level)};
    bool cv;
    if (s.is_const(&cv)) return cv ? 1 : 0;
    uint64_t h = s.hash();
    auto& bucket = memo[{level, h}];
    for (auto& [slice, id] : bucket)
      if (slice.equal(s)) return id;
    uint64_t half = 1ULL << (n - level - 1);
    int lo = self(self, level + 1, begin_bit);
    int hi = self(self, level + 1, begin_bit + half);
    int id;
    if (lo == hi) {
      id = lo;  // skipped test: residual does not depend on order[level]
    } else {
      auto key = std::make_tuple(order[level], lo, hi);
      auto it = unique.find(key);
      if (it != unique.end()) {
        id = it->second;
      } else {
        o.nodes.push_back({order[level], lo, hi});
        id = static_cast<int>(o.nodes.size()) - 1;
        unique[key] = id;
      }
    }
    bucket.push_back({s, id});
    return id;
  };
  o.root = rec(rec, 0, 0);

  // level widths by the reached-subfunction definition; a prefix that hits a
  // leaf keeps reaching that leaf at every deeper level
  o.level_width.assign(n + 1, 0);
  o.level_width_with_const.assign(n + 1, 0);
  std::vector<std::pair<uint64_t, uint64_t>> frontier{{0, 1ULL << n}};  // (begin, len)
  bool leaf_reached[2] = {false, false};
  for (int level = 0; level <= n; ++level) {
    std::vector<std::pair<uint64_t, uint64_t>> distinct;
    for (auto [begin, len] : frontier) {
      Slice s{&words, begin, len};
      bool cv;
      if (s.is_const(&cv)) {
        leaf_reached[cv] = true;
        continue;
      }
      bool dup = false;
      for (auto [b2, l2] : distinct)
        if (Slice{&words, b2, l2}.equal(s)) {
          dup = true;
          break;
        }
      if (!dup) distinct.push_back({begin, len});
    }
    o.level_width[level] = static_cast<int>(distinct.size());
    o.level_width_with_const[level] =
        static_cast<int>(distinct.size()) + leaf_reached[0] + leaf_reached[1];
    if (level == n) break;
    std::vector<std::pair<uint64_t, uint64_t>> next;
    for (auto [begin, len] : distinct) {
      next.push_back({begin, len / 2});
      next.push_back({begin + len / 2, len / 2});
    }
    frontier = std::move(next);
  }
  return o;
}

}  // namespace

Obdd obdd_build(const MonotoneFormula& phi, const std::vector<int>& order) {
  const int n = phi.num_vars;
  if (n > 26) fail(Errc::size_limit, "obdd build limited to 26 variables");
  if (static_cast<int>(order.size()) != n)
    fail(Errc::bad_input, "order must list every formula variable exactly once");
  Bitset table(1 << n);
  std::vector<uint8_t> assignment(n);
  for (uint64_t idx = 0; idx < (1ULL << n); ++idx) {
    for (int v = 0; v < n; ++v) assignment[v] = (idx >> v) & 1;
    if (phi.eval(assignment)) table.set(static_cast<int>(idx));
  }
  return build_from_table(table, order);
}

Obdd obdd_build(const Circuit& c, const std::vector<int>& order) {
  if (order.size() != c.var_gates().size())
    fail(Errc::bad_input, "order must list every circuit variable exactly once");
  return build_from_table(circuit_truth_table(c), order);
}

bool obdd_eval(const Obdd& o, const std::vector<uint8_t>& assignment) {
  int n = o.root;
  while (o.nodes[n].var >= 0) n = assignment[o.nodes[n].var] ? o.nodes[n].hi : o.nodes[n].lo;
  return n == 1;
}

namespace {

// number of distinct non-constant residual functions after fixing the
// variable set `fixed` (order inside the set is irrelevant)
int cut_width(const Bitset& table, int n, uint32_t fixed) {
  std::vector<int> fixed_vars, free_vars;
  for (int v = 0; v < n; ++v)
    ((fixed >> v) & 1 ? fixed_vars : free_vars).push_back(v);
  const int nf = static_cast<int>(fixed_vars.size());
  const int nr = static_cast<int>(free_vars.size());
  std::vector<std::vector<uint64_t>> seen;
  int nonconst = 0;
  for (uint32_t a = 0; a < (1u << nf); ++a) {
    std::vector<uint64_t> residual((static_cast<size_t>(1) << nr) / 64 + 1, 0);
    uint32_t base = 0;
    for (int i = 0; i < nf; ++i)
      if ((a >> i) & 1) base |= 1u << fixed_vars[i];
    bool first = table.test(base), all_same = true;
    for (uint32_t r = 0; r < (1u << nr); ++r) {
      uint32_t idx = base;
      for (int i = 0; i < nr; ++i)
        if ((r >> i) & 1) idx |= 1u << free_vars[i];
      bool bit = table.test(idx);
      all_same = all_same && bit == first;
      if (bit) residual[r >> 6] |= 1ULL << (r & 63);
    }
    if (all_same) continue;  // constant residuals are excluded from width
    bool dup = false;
    for (const auto& s : seen)
      if (s == residual) {
        dup = true;
        break;
      }
    if (!dup) {
      seen.push_back(std::move(residual));
      ++nonconst;
    }
  }
  return nonconst;
}

}  // namespace

BestOrder best_order(const MonotoneFormula& phi, OrderSearch mode) {
  const int n = phi.num_vars;
  if (mode == OrderSearch::Greedy) {
    std::vector<int> order = greedy_split_order(hypergraph_of(phi));
    Obdd o = obdd_build(phi, order);
    return {order, o.width()};
  }

  if (n > 10) fail(Errc::size_limit, "exhaustive order search limited to 10 variables");
  Bitset table(1 << n);
  std::vector<uint8_t> assignment(n);
  for (uint32_t idx = 0; idx < (1u << n); ++idx) {
    for (int v = 0; v < n; ++v) assignment[v] = (idx >> v) & 1;
    if (phi.eval(assignment)) table.set(static_cast<int>(idx));
  }

  // The residual-function set after a prefix depends only on the prefix as a
  // set, so min-max width over all n! orders reduces to a DP over subsets.
  // g[s] = best achievable max cut over completions of prefix set s.
  const uint32_t full = (1u << n) - 1;
  std::vector<int> cut(full + 1);
  for (uint32_t s = 0; s <= full; ++s) cut[s] = cut_width(table, n, s);
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

  BestOrder out;
  out.width = std::max(cut[0], g[0]);  // cut[0] covers the level-0 root

  // lexicographically-smallest optimal order: greedily take the smallest
  // variable that keeps the optimum reachable
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

Obdd dualize(const Obdd& o) {
  Obdd d;
  d.order = o.order;
  d.nodes = o.nodes;
  auto flip_leaf = [](int id) { return id < 2 ? 1 - id : id; };
  for (size_t i = 2; i < d.nodes.size(); ++i) {
    // edge labels flip: the 0-edge becomes the 1-edge and vice versa;
    // leaf labels flip as well
    int lo = flip_leaf(o.nodes[i].lo);
    int hi = flip_leaf(o.nodes[i].hi);
    d.nodes[i].lo = hi;
    d.nodes[i].hi = lo;
  }
  d.root = flip_leaf(o.root);
  d.level_width = o.level_width;
  d.level_width_with_const = o.level_width_with_const;
  return d;
}

std::string write_obdd(const Obdd& o) {
  std::ostringstream out;
  out << "order";
  for (int v : o.order) out << ' ' << v + 1;
  out << '\n';
  out << "0\n1\n";
  for (size_t i = 2; i < o.nodes.size(); ++i)
    out << "node " << i << ' ' << o.nodes[i].var + 1 << ' ' << o.nodes[i].lo << ' '
        << o.nodes[i].hi << '\n';
  out << "root " << o.root << '\n';
  return out.str();
}

std::string obdd_profile_json(const Obdd& o) {
  std::ostringstream out;
  out << "{\"order\":[";
  for (size_t i = 0; i < o.order.size(); ++i) out << (i ? "," : "") << o.order[i] + 1;
  out << "],\"width\":" << o.width() << ",\"width_with_const\":" << o.width_with_const()
      << ",\"size\":" << o.size() << ",\"levels\":[";
  for (size_t i = 0; i < o.level_width.size(); ++i) out << (i ? "," : "") << o.level_width[i];
  out << "],\"levels_with_const\":[";
  for (size_t i = 0; i < o.level_width_with_const.size(); ++i)
    out << (i ? "," : "") << o.level_width_with_const[i];
  out << "]}";
  return out.str();
}

}  // namespace twc
