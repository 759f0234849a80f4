#include "twc/compile.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <map>

namespace twc {

bool value_strong_for(GateType gate, bool value) {
  switch (gate) {
    case GateType::And: return !value;
    case GateType::Or: return value;
    case GateType::Not: return true;
    case GateType::Var: return false;
  }
  return false;
}

namespace {

// bag-local view: gate types and in-bag input positions as masks
struct BagCtx {
  std::vector<GateId> gates;  // sorted
  std::vector<GateType> types;
  std::vector<uint32_t> inputs_in_bag;  // per position

  static BagCtx make(const Circuit& c, const std::vector<GateId>& bag) {
    BagCtx ctx;
    ctx.gates = bag;
    assert(std::is_sorted(bag.begin(), bag.end()));
    ctx.types.reserve(bag.size());
    ctx.inputs_in_bag.assign(bag.size(), 0);
    for (size_t p = 0; p < bag.size(); ++p) {
      ctx.types.push_back(c.types[bag[p]]);
      for (GateId s : c.inputs[bag[p]]) {
        auto it = std::lower_bound(bag.begin(), bag.end(), s);
        if (it != bag.end() && *it == s)
          ctx.inputs_in_bag[p] |= 1u << (it - bag.begin());
      }
    }
    return ctx;
  }

  int position(GateId g) const {
    auto it = std::lower_bound(gates.begin(), gates.end(), g);
    return it != gates.end() && *it == g ? static_cast<int>(it - gates.begin()) : -1;
  }
};

bool mask_is_almost_evaluation(const BagCtx& ctx, uint32_t nu) {
  for (size_t p = 0; p < ctx.gates.size(); ++p) {
    uint32_t m = ctx.inputs_in_bag[p];
    while (m) {
      int q = __builtin_ctz(m);
      m &= m - 1;
      bool in_val = (nu >> q) & 1;
      if (!value_strong_for(ctx.types[p], in_val)) continue;
      bool determined = ctx.types[p] == GateType::Not ? !in_val : in_val;
      if (static_cast<bool>((nu >> p) & 1) != determined) return false;
    }
  }
  return true;
}

uint32_t mask_unjustified(const BagCtx& ctx, uint32_t nu) {
  uint32_t unf = 0;
  for (size_t p = 0; p < ctx.gates.size(); ++p) {
    if (!value_strong_for(ctx.types[p], (nu >> p) & 1)) continue;
    bool justified = false;
    uint32_t m = ctx.inputs_in_bag[p];
    while (m && !justified) {
      int q = __builtin_ctz(m);
      m &= m - 1;
      justified = value_strong_for(ctx.types[p], (nu >> q) & 1);
    }
    if (!justified) unf |= 1u << p;
  }
  return unf;
}

uint32_t valuation_to_mask(const BagCtx& ctx, const Valuation& nu) {
  uint32_t mask = 0;
  for (auto [g, v] : nu) {
    int p = ctx.position(g);
    if (p < 0) fail(Errc::bad_input, "valuation mentions gate outside the bag");
    if (v) mask |= 1u << p;
  }
  for (size_t p = 0; p < ctx.gates.size(); ++p)
    if (!nu.count(ctx.gates[p]))
      fail(Errc::bad_input, "valuation misses bag gate " + std::to_string(ctx.gates[p]));
  return mask;
}

std::vector<GateId> mask_to_gateset(const BagCtx& ctx, uint32_t mask) {
  std::vector<GateId> out;
  while (mask) {
    int p = __builtin_ctz(mask);
    mask &= mask - 1;
    out.push_back(ctx.gates[p]);
  }
  return out;
}

}  // namespace

bool is_almost_evaluation(const Circuit& c, const std::vector<GateId>& bag, const Valuation& nu) {
  std::vector<GateId> sorted = bag;
  std::sort(sorted.begin(), sorted.end());
  BagCtx ctx = BagCtx::make(c, sorted);
  return mask_is_almost_evaluation(ctx, valuation_to_mask(ctx, nu));
}

std::vector<GateId> unjustified(const Circuit& c, const std::vector<GateId>& bag,
                                const Valuation& nu) {
  std::vector<GateId> sorted = bag;
  std::sort(sorted.begin(), sorted.end());
  BagCtx ctx = BagCtx::make(c, sorted);
  uint32_t m = valuation_to_mask(ctx, nu);
  if (!mask_is_almost_evaluation(ctx, m))
    fail(Errc::bad_input, "assignment does not respect strong values");
  return mask_to_gateset(ctx, mask_unjustified(ctx, m));
}

bool connectible(const std::vector<GateId>& suspicious, const std::vector<GateId>& parent_bag) {
  for (GateId g : suspicious)
    if (!std::count(parent_bag.begin(), parent_bag.end(), g)) return false;
  return true;
}

std::optional<EvalPair> result_of(const Circuit& c, const std::vector<GateId>& bag,
                                  const std::vector<GateId>& left_bag, const EvalPair& left,
                                  const std::vector<GateId>& right_bag, const EvalPair& right) {
  for (auto [g, v] : left.nu) {
    auto it = right.nu.find(g);
    if (it != right.nu.end() && it->second != v)
      fail(Errc::bad_input, "child assignments disagree on gate " + std::to_string(g));
  }
  std::vector<GateId> sorted = bag;
  std::sort(sorted.begin(), sorted.end());
  BagCtx ctx = BagCtx::make(c, sorted);

  uint32_t nu = 0;
  for (size_t p = 0; p < ctx.gates.size(); ++p) {
    GateId g = ctx.gates[p];
    bool value;
    if (auto it = left.nu.find(g); it != left.nu.end())
      value = it->second;
    else if (auto jt = right.nu.find(g); jt != right.nu.end())
      value = jt->second;
    else
      fail(Errc::bad_input, "bag gate " + std::to_string(g) + " not covered by children");
    if (value) nu |= 1u << p;
  }
  if (!mask_is_almost_evaluation(ctx, nu)) return std::nullopt;

  uint32_t unf = mask_unjustified(ctx, nu);
  uint32_t innocent_from_children = 0;
  for (size_t p = 0; p < ctx.gates.size(); ++p) {
    GateId g = ctx.gates[p];
    bool in_l = std::count(left_bag.begin(), left_bag.end(), g);
    bool in_r = std::count(right_bag.begin(), right_bag.end(), g);
    bool sus_l = std::count(left.suspicious.begin(), left.suspicious.end(), g);
    bool sus_r = std::count(right.suspicious.begin(), right.suspicious.end(), g);
    if ((in_l && !sus_l) || (in_r && !sus_r)) innocent_from_children |= 1u << p;
  }
  uint32_t s = unf & ~innocent_from_children;

  EvalPair out;
  for (size_t p = 0; p < ctx.gates.size(); ++p) out.nu[ctx.gates[p]] = (nu >> p) & 1;
  out.suspicious = mask_to_gateset(ctx, s);
  return out;
}

namespace {

struct BagGates {
  // entries in creation order: nu ascending, then S as ascending submask
  struct Entry {
    uint32_t nu;
    uint32_t sus;
    int or_node = -1;   // internal bags only
    int and_node = -1;  // the gate G_b^{nu,S}
  };
  std::vector<Entry> entries;
  std::map<std::pair<uint32_t, uint32_t>, int> index;  // (nu,S) -> entry
};

}  // namespace

CompileResult compile_circuit(const Circuit& c, const NiceTreeDecomposition& nice,
                              const CompileOptions& options) {
  auto t0 = std::chrono::steady_clock::now();
  const TreeDecomposition& tree = nice.tree;

  ValidationResult niceness = check_nice(nice);
  if (!niceness.ok)
    fail(Errc::invalid_decomposition, "decomposition is not nice: " + niceness.message);
  ValidationResult valid = validate(tree, circuit_skeleton(c));
  if (!valid.ok) fail(Errc::invalid_decomposition, valid.message);
  if (tree.bags[tree.root] != std::vector<int>{c.output})
    fail(Errc::invalid_decomposition, "root bag is not {output}; run root_for_compile first");
  if (tree.width() + 1 > 26) fail(Errc::size_limit, "compile limited to width 25");

  CompileResult res;
  Nnf& d = res.nnf;
  d.num_vars = static_cast<int>(c.var_gates().size());

  // literal gates per variable, both polarities, in var order
  std::vector<std::array<int, 2>> lit(d.num_vars);
  for (int i = 0; i < d.num_vars; ++i) {
    lit[i][1] = d.add_lit(i, true);
    lit[i][0] = d.add_lit(i, false);
  }

  const int nbags = tree.node_count();
  std::vector<BagCtx> ctx(nbags);
  std::vector<BagGates> gates(nbags);

  // v-tree skeleton: one node per bag, one per internal bag's children pair,
  // one leaf per responsible var gate
  VTree& vt = res.vtree;
  vt.num_vars = d.num_vars;
  std::vector<int> vt_bag(nbags, -1);

  for (int b : tree.postorder()) {
    ctx[b] = BagCtx::make(c, tree.bags[b]);
    const BagCtx& bc = ctx[b];
    const size_t sz = bc.gates.size();
    const bool internal = !tree.children[b].empty();
    const int resp = nice.responsible[b];
    int resp_pos = -1;
    if (resp >= 0) {
      resp_pos = bc.position(resp);
      assert(resp_pos >= 0 && c.types[resp] == GateType::Var);
    }

    // v-tree nodes for this bag
    int vchildren = -1;
    if (internal) {
      vchildren = vt.add_node();
      vt.attach(vchildren, vt_bag[tree.children[b][0]]);
      vt.attach(vchildren, vt_bag[tree.children[b][1]]);
    }
    vt_bag[b] = vt.add_node();
    if (internal) vt.attach(vt_bag[b], vchildren);
    if (resp >= 0) vt.attach(vt_bag[b], vt.add_leaf(c.var_index(resp)));

    if (!internal) {
      // leaf bag: one gate per almost-evaluation, suspicious = unjustified
      for (uint32_t nu = 0; nu < (1u << sz); ++nu) {
        if (!mask_is_almost_evaluation(bc, nu)) continue;
        uint32_t unf = mask_unjustified(bc, nu);
        std::vector<int> kids;
        if (resp >= 0) kids.push_back(lit[c.var_index(resp)][(nu >> resp_pos) & 1]);
        int node = d.add_and(std::move(kids));
        gates[b].index[{nu, unf}] = static_cast<int>(gates[b].entries.size());
        gates[b].entries.push_back({nu, unf, -1, node});
      }
      continue;
    }

    const int bl = tree.children[b][0];
    const int br = tree.children[b][1];
    const BagCtx& lc = ctx[bl];
    const BagCtx& rc = ctx[br];

    // position translations child -> parent
    auto present_mask = [&](const BagCtx& child) {
      uint32_t m = 0;
      for (size_t p = 0; p < child.gates.size(); ++p)
        if (bc.position(child.gates[p]) >= 0) m |= 1u << p;
      return m;
    };
    const uint32_t lpresent = present_mask(lc);
    const uint32_t rpresent = present_mask(rc);

    std::vector<int> from_left(sz, -1), from_right(sz, -1);
    for (size_t p = 0; p < sz; ++p) {
      from_left[p] = lc.position(bc.gates[p]);
      from_right[p] = rc.position(bc.gates[p]);
    }

    // shared gate positions for the agreement check
    std::vector<std::pair<int, int>> shared;
    for (size_t p = 0; p < lc.gates.size(); ++p) {
      int q = rc.position(lc.gates[p]);
      if (q >= 0) shared.push_back({static_cast<int>(p), q});
    }
    auto lkey = [&](uint32_t nu) {
      uint64_t k = 0;
      for (size_t i = 0; i < shared.size(); ++i) k |= static_cast<uint64_t>((nu >> shared[i].first) & 1) << i;
      return k;
    };
    auto rkey = [&](uint32_t nu) {
      uint64_t k = 0;
      for (size_t i = 0; i < shared.size(); ++i) k |= static_cast<uint64_t>((nu >> shared[i].second) & 1) << i;
      return k;
    };

    // group connectible right gates by their shared-gate values
    std::map<uint64_t, std::vector<int>> right_by_key;
    for (size_t i = 0; i < gates[br].entries.size(); ++i) {
      const auto& e = gates[br].entries[i];
      if (e.sus & ~rpresent) continue;  // not connectible
      right_by_key[rkey(e.nu)].push_back(static_cast<int>(i));
    }

    // pair gates, bucketed by their result
    std::map<std::pair<uint32_t, uint32_t>, std::vector<int>> or_inputs;
    for (const auto& le : gates[bl].entries) {
      if (le.sus & ~lpresent) continue;
      auto bucket = right_by_key.find(lkey(le.nu));
      if (bucket == right_by_key.end()) continue;
      for (int ri : bucket->second) {
        const auto& re = gates[br].entries[ri];
        // result of the two child almost-evaluations
        uint32_t nu = 0;
        for (size_t p = 0; p < sz; ++p) {
          bool v = from_left[p] >= 0 ? (le.nu >> from_left[p]) & 1 : (re.nu >> from_right[p]) & 1;
          if (v) nu |= 1u << p;
        }
        if (!mask_is_almost_evaluation(bc, nu)) continue;  // incompatible
        uint32_t unf = mask_unjustified(bc, nu);
        uint32_t innocent = 0;
        for (size_t p = 0; p < sz; ++p) {
          bool il = from_left[p] >= 0 && !((le.sus >> from_left[p]) & 1);
          bool ir = from_right[p] >= 0 && !((re.sus >> from_right[p]) & 1);
          if (il || ir) innocent |= 1u << p;
        }
        uint32_t sus = unf & ~innocent;
        int pair_node = d.add_and({le.and_node, re.and_node});
        or_inputs[{nu, sus}].push_back(pair_node);
      }
    }

    // one OR and one AND per (nu, S), nu ascending and S an ascending submask
    for (uint32_t nu = 0; nu < (1u << sz); ++nu) {
      if (!mask_is_almost_evaluation(bc, nu)) continue;
      uint32_t unf = mask_unjustified(bc, nu);
      uint32_t sub = 0;
      while (true) {
        auto it = or_inputs.find({nu, sub});
        int or_node =
            d.add_or(it == or_inputs.end() ? std::vector<int>{} : std::move(it->second));
        std::vector<int> kids{or_node};
        if (resp >= 0) kids.push_back(lit[c.var_index(resp)][(nu >> resp_pos) & 1]);
        int and_node = d.add_and(std::move(kids));
        gates[b].index[{nu, sub}] = static_cast<int>(gates[b].entries.size());
        gates[b].entries.push_back({nu, sub, or_node, and_node});
        if (sub == unf) break;
        sub = (sub - unf) & unf;
      }
    }
  }

  // output: G^{nu,empty} at the root with nu(output) = 1
  const int rb = tree.root;
  auto out_it = gates[rb].index.find({1u, 0u});
  int output_node;
  if (out_it != gates[rb].index.end())
    output_node = gates[rb].entries[out_it->second].and_node;
  else
    output_node = d.add_false();  // only for leaf roots whose value-1 gate is suspicious
  d.root = output_node;
  vt.root = vt_bag[rb];

  CompileStats& st = res.stats;
  st.width = tree.width();
  st.bag_count = nbags;
  st.vars = d.num_vars;
  st.gates_created = d.size();
  st.gc = options.gc;

  if (options.gc) {
    // drop gates unreachable from the output, keeping relative order
    std::vector<uint8_t> live(d.size(), 0);
    std::vector<int> stack{d.root};
    live[d.root] = 1;
    while (!stack.empty()) {
      int n = stack.back();
      stack.pop_back();
      for (int ch : d.nodes[n].children)
        if (!live[ch]) {
          live[ch] = 1;
          stack.push_back(ch);
        }
    }
    std::vector<int> newid(d.size(), -1);
    Nnf compact;
    compact.num_vars = d.num_vars;
    for (int i = 0; i < d.size(); ++i) {
      if (!live[i]) continue;
      Nnf::Node n = d.nodes[i];
      for (int& ch : n.children) ch = newid[ch];
      newid[i] = compact.size();
      compact.nodes.push_back(std::move(n));
    }
    compact.root = newid[d.root];
    res.nnf = std::move(compact);
  }
  st.gates_after_gc = res.nnf.root + 1;  // nodes reachable in the emitted prefix

  st.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace twc
