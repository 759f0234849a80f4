#include "twc/nnf.hpp"

#include <algorithm>
#include <cassert>
#include <istream>
#include <sstream>

namespace twc {

int Nnf::add_true() {
  nodes.push_back({Kind::True, -1, true, {}});
  return size() - 1;
}
int Nnf::add_false() {
  nodes.push_back({Kind::False, -1, true, {}});
  return size() - 1;
}
int Nnf::add_lit(int var, bool positive) {
  assert(var >= 0 && var < num_vars);
  nodes.push_back({Kind::Lit, var, positive, {}});
  return size() - 1;
}
int Nnf::add_and(std::vector<int> children) {
  for (int c : children) {
    assert(c >= 0 && c < size());
    (void)c;
  }
  nodes.push_back({Kind::And, -1, true, std::move(children)});
  return size() - 1;
}
int Nnf::add_or(std::vector<int> children) {
  for (int c : children) {
    assert(c >= 0 && c < size());
    (void)c;
  }
  nodes.push_back({Kind::Or, -1, true, std::move(children)});
  return size() - 1;
}

std::vector<Bitset> nnf_scopes(const Nnf& d) {
  std::vector<Bitset> scope(d.size(), Bitset(d.num_vars));
  for (int i = 0; i < d.size(); ++i) {
    const auto& node = d.nodes[i];
    if (node.kind == Nnf::Kind::Lit) scope[i].set(node.var);
    for (int c : node.children) scope[i] |= scope[c];
  }
  return scope;
}

namespace {

// evaluate 64 assignments at once; word bit t = assignment t
std::vector<uint64_t> eval_block_all(const Nnf& d, const std::vector<uint64_t>& var_words) {
  std::vector<uint64_t> val(d.size());
  for (int i = 0; i < d.size(); ++i) {
    const auto& node = d.nodes[i];
    switch (node.kind) {
      case Nnf::Kind::True: val[i] = ~0ULL; break;
      case Nnf::Kind::False: val[i] = 0; break;
      case Nnf::Kind::Lit:
        val[i] = node.positive ? var_words[node.var] : ~var_words[node.var];
        break;
      case Nnf::Kind::And: {
        uint64_t acc = ~0ULL;
        for (int c : node.children) acc &= val[c];
        val[i] = acc;
        break;
      }
      case Nnf::Kind::Or: {
        uint64_t acc = 0;
        for (int c : node.children) acc |= val[c];
        val[i] = acc;
        break;
      }
    }
  }
  return val;
}

void lane_words(std::vector<uint64_t>& words, const std::vector<int>& vars, uint64_t base) {
  static const uint64_t lane[6] = {0xaaaaaaaaaaaaaaaaULL, 0xccccccccccccccccULL,
                                   0xf0f0f0f0f0f0f0f0ULL, 0xff00ff00ff00ff00ULL,
                                   0xffff0000ffff0000ULL, 0xffffffff00000000ULL};
  for (size_t i = 0; i < vars.size(); ++i)
    words[vars[i]] = i < 6 ? lane[i] : (((base >> i) & 1) ? ~0ULL : 0ULL);
}

}  // namespace

bool nnf_eval(const Nnf& d, const std::vector<uint8_t>& assignment) {
  std::vector<uint64_t> words(d.num_vars, 0);
  for (int v = 0; v < d.num_vars; ++v)
    if (v < static_cast<int>(assignment.size()) && assignment[v]) words[v] = ~0ULL;
  return eval_block_all(d, words)[d.root] & 1;
}

CheckResult check_nnf(const Nnf& d) {
  if (d.root < 0 || d.root >= d.size()) return {false, "root id out of range"};
  for (int i = 0; i < d.size(); ++i) {
    const auto& node = d.nodes[i];
    if (node.kind == Nnf::Kind::Lit && (node.var < 0 || node.var >= d.num_vars))
      return {false, "node " + std::to_string(i) + ": literal var out of range"};
    for (int c : node.children)
      if (c < 0 || c >= i)
        return {false, "node " + std::to_string(i) + ": child " + std::to_string(c) +
                           " not below the node"};
  }
  return {true, ""};
}

CheckResult check_decomposable(const Nnf& d) {
  auto scope = nnf_scopes(d);
  for (int i = 0; i < d.size(); ++i) {
    const auto& node = d.nodes[i];
    if (node.kind != Nnf::Kind::And) continue;
    Bitset seen(d.num_vars);
    for (size_t a = 0; a < node.children.size(); ++a) {
      // identical child ids are one input gate, not two
      bool dup = false;
      for (size_t b = 0; b < a; ++b) dup = dup || node.children[b] == node.children[a];
      if (dup) continue;
      if (seen.intersects(scope[node.children[a]])) {
        Bitset shared = seen;
        shared &= scope[node.children[a]];
        return {false, "and gate " + std::to_string(i) + " shares var " +
                           std::to_string(shared.find_first())};
      }
      seen |= scope[node.children[a]];
    }
  }
  return {true, ""};
}

namespace {

// deepest v-tree node whose leaf set covers `vars` (root if vars empty)
int lowest_cover(const VTree& vt, const std::vector<Bitset>& below, const Bitset& vars) {
  int n = vt.root;
  if (!vars.subset_of(below[n])) return -1;
  while (true) {
    int deeper = -1;
    for (int c : vt.nodes[n].child)
      if (c >= 0 && vars.subset_of(below[c])) deeper = c;
    if (deeper < 0 || vars.none()) break;
    n = deeper;
  }
  return n;
}

}  // namespace

CheckResult check_structured(const Nnf& d, const VTree& vt) {
  auto scope = nnf_scopes(d);
  auto below = vt.leaves_below();
  // precomputed: does any node on the path from x to the root have a parent
  // with two children / exactly one child?
  auto witness = [&](int i) { return "and gate " + std::to_string(i) + " has no structuring node"; };

  for (int i = 0; i < d.size(); ++i) {
    const auto& node = d.nodes[i];
    if (node.kind != Nnf::Kind::And || node.children.empty()) continue;
    if (node.children.size() > 2)
      return {false, "and gate " + std::to_string(i) + " has fan-in > 2"};

    if (node.children.size() == 1) {
      // need a unary v-tree node whose child covers the input's scope
      const Bitset& s = scope[node.children[0]];
      bool found = false;
      if (s.none()) {
        for (size_t x = 0; x < vt.nodes.size() && !found; ++x)
          found = vt.nodes[x].parent >= 0 && vt.nodes[vt.nodes[x].parent].n_children() == 1;
      } else {
        int x = lowest_cover(vt, below, s);
        if (x < 0) return {false, witness(i)};
        for (; x >= 0 && !found; x = vt.nodes[x].parent)
          found = vt.nodes[x].parent >= 0 && vt.nodes[vt.nodes[x].parent].n_children() == 1;
      }
      if (!found) return {false, witness(i)};
      continue;
    }

    const Bitset& s0 = scope[node.children[0]];
    const Bitset& s1 = scope[node.children[1]];
    if (s0.none() && s1.none()) {
      bool found = false;
      for (size_t x = 0; x < vt.nodes.size() && !found; ++x)
        found = vt.nodes[x].n_children() == 2;
      if (!found) return {false, witness(i)};
      continue;
    }
    if (s0.none() || s1.none()) {
      // one side is constant: any binary node with the other side under one
      // child works
      const Bitset& s = s0.none() ? s1 : s0;
      int x = lowest_cover(vt, below, s);
      if (x < 0) return {false, witness(i)};
      bool found = false;
      for (; x >= 0 && !found; x = vt.nodes[x].parent)
        found = vt.nodes[x].parent >= 0 && vt.nodes[vt.nodes[x].parent].n_children() == 2;
      if (!found) return {false, witness(i)};
      continue;
    }

    // both sides non-constant: the only candidate is the lowest node
    // covering the union
    Bitset uni = s0;
    uni |= s1;
    int n = lowest_cover(vt, below, uni);
    if (n < 0 || vt.nodes[n].n_children() != 2) return {false, witness(i)};
    int cl = vt.nodes[n].child[0], cr = vt.nodes[n].child[1];
    bool ok = (s0.subset_of(below[cl]) && s1.subset_of(below[cr])) ||
              (s1.subset_of(below[cl]) && s0.subset_of(below[cr]));
    if (!ok) return {false, witness(i)};
  }
  return {true, ""};
}

CheckResult check_deterministic_exhaustive(const Nnf& d, int max_vars) {
  // vars used anywhere, not only under the root
  Bitset used_any(d.num_vars);
  for (int i = 0; i < d.size(); ++i)
    if (d.nodes[i].kind == Nnf::Kind::Lit) used_any.set(d.nodes[i].var);
  std::vector<int> used = used_any.to_vector();
  const int nv = static_cast<int>(used.size());
  if (nv > max_vars)
    fail(Errc::size_limit, "exhaustive determinism check limited to " + std::to_string(max_vars) +
                               " vars, nnf uses " + std::to_string(nv));

  const uint64_t total = 1ULL << nv;
  std::vector<uint64_t> words(d.num_vars, 0);
  for (uint64_t base = 0; base < total; base += 64) {
    lane_words(words, used, base);
    auto val = eval_block_all(d, words);
    uint64_t lanes_mask = total - base >= 64 ? ~0ULL : ((1ULL << (total - base)) - 1);
    for (int i = 0; i < d.size(); ++i) {
      const auto& node = d.nodes[i];
      if (node.kind != Nnf::Kind::Or) continue;
      uint64_t seen = 0, viol = 0;
      for (size_t a = 0; a < node.children.size(); ++a) {
        bool dup = false;
        for (size_t b = 0; b < a; ++b) dup = dup || node.children[b] == node.children[a];
        if (dup) continue;
        viol |= seen & val[node.children[a]];
        seen |= val[node.children[a]];
      }
      viol &= lanes_mask;
      if (viol) {
        int lane = __builtin_ctzll(viol);
        std::ostringstream w;
        w << "or gate " << i << " has two true inputs under valuation {";
        for (int v = 0; v < nv; ++v) {
          uint64_t idx = base + lane;
          w << (v ? "," : "") << used[v] + 1 << ":" << ((idx >> v) & 1);
        }
        w << "}";
        return {false, w.str()};
      }
    }
  }
  return {true, ""};
}

CheckResult check_deterministic_sampled(const Nnf& d, int samples, uint64_t seed) {
  Bitset used_any(d.num_vars);
  for (int i = 0; i < d.size(); ++i)
    if (d.nodes[i].kind == Nnf::Kind::Lit) used_any.set(d.nodes[i].var);
  std::vector<int> used = used_any.to_vector();
  SplitMix64 rng(seed);
  std::vector<uint64_t> words(d.num_vars, 0);
  for (int chunk = 0; chunk < (samples + 63) / 64; ++chunk) {
    for (int v : used) words[v] = rng.next();
    auto val = eval_block_all(d, words);
    for (int i = 0; i < d.size(); ++i) {
      const auto& node = d.nodes[i];
      if (node.kind != Nnf::Kind::Or) continue;
      uint64_t seen = 0, viol = 0;
      for (size_t a = 0; a < node.children.size(); ++a) {
        bool dup = false;
        for (size_t b = 0; b < a; ++b) dup = dup || node.children[b] == node.children[a];
        if (dup) continue;
        viol |= seen & val[node.children[a]];
        seen |= val[node.children[a]];
      }
      if (viol)
        return {false, "or gate " + std::to_string(i) + " has two true inputs under a sampled valuation"};
    }
  }
  return {true, ""};
}

double probability(const Nnf& d, const std::map<int, double>& pi) {
  for (auto [v, p] : pi)
    if (p < 0.0 || p > 1.0)
      fail(Errc::out_of_range, "probability of var " + std::to_string(v + 1) + " outside [0,1]");
  std::vector<double> val(d.size());
  for (int i = 0; i < d.size(); ++i) {
    const auto& node = d.nodes[i];
    switch (node.kind) {
      case Nnf::Kind::True: val[i] = 1.0; break;
      case Nnf::Kind::False: val[i] = 0.0; break;
      case Nnf::Kind::Lit: {
        auto it = pi.find(node.var);
        if (it == pi.end())
          fail(Errc::missing_variable, "no probability for var " + std::to_string(node.var + 1));
        val[i] = node.positive ? it->second : 1.0 - it->second;
        break;
      }
      case Nnf::Kind::And: {
        double p = 1.0;
        for (int c : node.children) p *= val[c];
        val[i] = p;
        break;
      }
      case Nnf::Kind::Or: {
        double p = 0.0;
        for (int c : node.children) p += val[c];
        val[i] = p;
        break;
      }
    }
  }
  return val[d.root];
}

BigInt model_count(const Nnf& d) {
  auto scope = nnf_scopes(d);
  std::vector<BigInt> cnt(d.size());
  // cnt[g] counts satisfying assignments of scope(g); OR children get an
  // explicit 2^{scope gap} correction
  for (int i = 0; i < d.size(); ++i) {
    const auto& node = d.nodes[i];
    switch (node.kind) {
      case Nnf::Kind::True: cnt[i] = 1; break;
      case Nnf::Kind::False: cnt[i] = 0; break;
      case Nnf::Kind::Lit: cnt[i] = 1; break;
      case Nnf::Kind::And: {
        BigInt p = 1;
        for (int c : node.children) p *= cnt[c];
        // decomposable AND: child scopes partition a subset of scope(i)
        int gap = scope[i].count();
        for (int c : node.children) gap -= scope[c].count();
        assert(gap >= 0);
        cnt[i] = p << gap;
        break;
      }
      case Nnf::Kind::Or: {
        BigInt s = 0;
        for (int c : node.children)
          s += cnt[c] << (scope[i].count() - scope[c].count());
        cnt[i] = s;
        break;
      }
    }
  }
  return cnt[d.root] << (d.num_vars - scope[d.root].count());
}

std::string Model::to_line() const {
  std::ostringstream out;
  bool first = true;
  for (int v = 0; v < det.universe(); ++v) {
    if (det.test(v) && !pos.test(v)) continue;
    if (!first) out << ' ';
    first = false;
    out << v + 1;
    if (!det.test(v)) out << '*';
  }
  return out.str();
}

namespace {

struct Enumerator {
  const Nnf& d;
  const std::function<bool(const Model&)>& sink;
  std::vector<uint8_t> sat;
  Model scratch;
  bool stopped = false;

  Enumerator(const Nnf& d, const std::function<bool(const Model&)>& sink)
      : d(d), sink(sink), scratch{Bitset(d.num_vars), Bitset(d.num_vars)} {
    sat.resize(d.size());
    for (int i = 0; i < d.size(); ++i) {
      const auto& node = d.nodes[i];
      switch (node.kind) {
        case Nnf::Kind::True:
        case Nnf::Kind::Lit: sat[i] = 1; break;
        case Nnf::Kind::False: sat[i] = 0; break;
        case Nnf::Kind::And: {
          bool all = true;
          for (int c : node.children) all = all && sat[c];
          sat[i] = all;
          break;
        }
        case Nnf::Kind::Or: {
          bool any = false;
          for (int c : node.children) any = any || sat[c];
          sat[i] = any;
          break;
        }
      }
    }
  }

  // enumerate partial models of the trace rooted at `n`, combined with
  // whatever is already in scratch; calls `done` at each completion
  void walk(int n, const std::function<void()>& done) {
    if (stopped) return;
    const auto& node = d.nodes[n];
    switch (node.kind) {
      case Nnf::Kind::True: done(); break;
      case Nnf::Kind::False: break;
      case Nnf::Kind::Lit: {
        if (scratch.det.test(node.var)) {
          // shared literal below non-decomposable AND; honor consistency
          if (scratch.pos.test(node.var) == node.positive) done();
          break;
        }
        scratch.det.set(node.var);
        scratch.pos.assign(node.var, node.positive);
        done();
        scratch.det.reset(node.var);
        scratch.pos.reset(node.var);
        break;
      }
      case Nnf::Kind::Or:
        for (int c : node.children) {
          if (stopped) break;
          if (sat[c]) walk(c, done);
        }
        break;
      case Nnf::Kind::And: {
        if (node.children.empty()) {
          done();
          break;
        }
        walk_and(node.children, 0, done);
        break;
      }
    }
  }

  void walk_and(const std::vector<int>& cs, size_t i, const std::function<void()>& done) {
    if (i + 1 == cs.size()) {
      walk(cs[i], done);
      return;
    }
    walk(cs[i], [&]() { walk_and(cs, i + 1, done); });
  }

  void run() {
    if (!sat[d.root]) return;
    walk(d.root, [&]() {
      if (!sink(scratch)) stopped = true;
    });
  }
};

}  // namespace

void enumerate_models(const Nnf& d, const std::function<bool(const Model&)>& sink) {
  Enumerator e(d, sink);
  e.run();
}

std::vector<Model> all_models(const Nnf& d) {
  std::vector<Model> out;
  enumerate_models(d, [&](const Model& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

Nnf restrict_nnf(const Nnf& d, const Valuation& partial) {
  Nnf out;
  out.num_vars = d.num_vars;
  int true_id = -1, false_id = -1;
  auto get_true = [&]() { return true_id >= 0 ? true_id : (true_id = out.add_true()); };
  auto get_false = [&]() { return false_id >= 0 ? false_id : (false_id = out.add_false()); };

  // map old node -> new node id; -2/-3 encode constant true/false
  constexpr int kTrue = -2, kFalse = -3;
  std::vector<int> remap(d.size());
  for (int i = 0; i < d.size(); ++i) {
    const auto& node = d.nodes[i];
    switch (node.kind) {
      case Nnf::Kind::True: remap[i] = kTrue; break;
      case Nnf::Kind::False: remap[i] = kFalse; break;
      case Nnf::Kind::Lit: {
        auto it = partial.find(node.var);
        if (it == partial.end())
          remap[i] = out.add_lit(node.var, node.positive);
        else
          remap[i] = it->second == node.positive ? kTrue : kFalse;
        break;
      }
      case Nnf::Kind::And: {
        std::vector<int> kids;
        bool dead = false;
        for (int c : node.children) {
          if (remap[c] == kFalse) dead = true;
          else if (remap[c] != kTrue) kids.push_back(remap[c]);
        }
        if (dead) remap[i] = kFalse;
        else if (kids.empty()) remap[i] = kTrue;
        else if (kids.size() == 1) remap[i] = kids[0];
        else remap[i] = out.add_and(std::move(kids));
        break;
      }
      case Nnf::Kind::Or: {
        std::vector<int> kids;
        bool live = false;
        for (int c : node.children) {
          if (remap[c] == kTrue) live = true;
          else if (remap[c] != kFalse) kids.push_back(remap[c]);
        }
        if (live) remap[i] = kTrue;
        else if (kids.empty()) remap[i] = kFalse;
        else if (kids.size() == 1) remap[i] = kids[0];
        else remap[i] = out.add_or(std::move(kids));
        break;
      }
    }
  }
  int r = remap[d.root];
  out.root = r == kTrue ? get_true() : r == kFalse ? get_false() : r;
  return out;
}

Nnf nnf_from_formula(const MonotoneFormula& phi) {
  Nnf d;
  d.num_vars = phi.num_vars;
  std::vector<int> lit(phi.num_vars, -1);
  std::vector<int> clause_nodes;
  for (const auto& cl : phi.clauses) {
    std::vector<int> kids;
    for (int v : cl) {
      if (lit[v] < 0) lit[v] = d.add_lit(v, true);
      kids.push_back(lit[v]);
    }
    clause_nodes.push_back(phi.kind == FormulaKind::Dnf ? d.add_and(std::move(kids))
                                                        : d.add_or(std::move(kids)));
  }
  d.root = phi.kind == FormulaKind::Dnf ? d.add_or(std::move(clause_nodes))
                                        : d.add_and(std::move(clause_nodes));
  return d;
}

bool nnf_equivalent_exhaustive(const Nnf& a, const Nnf& b, int max_vars) {
  int nv = std::max(a.num_vars, b.num_vars);
  if (nv > max_vars) fail(Errc::size_limit, "exhaustive equivalence limited by max_vars");
  const uint64_t total = 1ULL << nv;
  std::vector<int> vars(nv);
  for (int i = 0; i < nv; ++i) vars[i] = i;
  std::vector<uint64_t> wa(a.num_vars), wb(b.num_vars);
  for (uint64_t base = 0; base < total; base += 64) {
    std::vector<uint64_t> w(nv);
    lane_words(w, vars, base);
    for (int v = 0; v < a.num_vars; ++v) wa[v] = w[v];
    for (int v = 0; v < b.num_vars; ++v) wb[v] = w[v];
    uint64_t ra = eval_block_all(a, wa)[a.root];
    uint64_t rb = eval_block_all(b, wb)[b.root];
    uint64_t lanes_mask = total - base >= 64 ? ~0ULL : ((1ULL << (total - base)) - 1);
    if ((ra ^ rb) & lanes_mask) return false;
  }
  return true;
}

bool nnf_circuit_equivalent_exhaustive(const Nnf& d, const Circuit& c, int max_vars) {
  // nnf var i corresponds to c.var_gates()[i]
  const int nv = static_cast<int>(c.var_gates().size());
  if (nv > max_vars) fail(Errc::size_limit, "exhaustive equivalence limited by max_vars");
  if (d.num_vars != nv) return false;
  const uint64_t total = 1ULL << nv;
  std::vector<int> lanes(nv);
  for (int i = 0; i < nv; ++i) lanes[i] = i;
  std::vector<uint64_t> w(nv);
  for (uint64_t base = 0; base < total; base += 64) {
    lane_words(w, lanes, base);
    uint64_t rc = evaluate_block(c, w);
    uint64_t rd = eval_block_all(d, w)[d.root];
    uint64_t lanes_mask = total - base >= 64 ? ~0ULL : ((1ULL << (total - base)) - 1);
    if ((rc ^ rd) & lanes_mask) return false;
  }
  return true;
}

Nnf parse_c2d(std::istream& in) {
  std::string line;
  int n_nodes = -1, n_edges = -1, n_vars = -1;
  Nnf d;
  int lineno = 0;
  int next = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'n') {
      std::string tag;
      if (!(ls >> tag >> n_nodes >> n_edges >> n_vars) || tag != "nnf")
        fail(Errc::parse_error, "line " + std::to_string(lineno) + ": expected 'nnf N E V'");
      d.num_vars = n_vars;
      continue;
    }
    if (n_nodes < 0) fail(Errc::parse_error, "line " + std::to_string(lineno) + ": node before header");
    char tag;
    ls >> tag;
    if (tag == 'L') {
      long lit;
      if (!(ls >> lit) || lit == 0 || std::abs(lit) > n_vars)
        fail(Errc::parse_error, "line " + std::to_string(lineno) + ": bad literal");
      d.add_lit(static_cast<int>(std::abs(lit)) - 1, lit > 0);
    } else if (tag == 'A') {
      int c;
      if (!(ls >> c)) fail(Errc::parse_error, "line " + std::to_string(lineno) + ": bad A line");
      std::vector<int> kids(c);
      for (int i = 0; i < c; ++i)
        if (!(ls >> kids[i]) || kids[i] < 0 || kids[i] >= next)
          fail(Errc::parse_error, "line " + std::to_string(lineno) + ": bad child id");
      if (c == 0)
        d.add_true();
      else
        d.add_and(std::move(kids));
    } else if (tag == 'O') {
      int j, c;
      if (!(ls >> j >> c)) fail(Errc::parse_error, "line " + std::to_string(lineno) + ": bad O line");
      std::vector<int> kids(c);
      for (int i = 0; i < c; ++i)
        if (!(ls >> kids[i]) || kids[i] < 0 || kids[i] >= next)
          fail(Errc::parse_error, "line " + std::to_string(lineno) + ": bad child id");
      if (c == 0)
        d.add_false();
      else
        d.add_or(std::move(kids));
    } else {
      fail(Errc::parse_error, "line " + std::to_string(lineno) + ": unknown node tag");
    }
    ++next;
  }
  if (n_nodes < 0) fail(Errc::parse_error, "missing nnf header");
  if (d.size() != n_nodes)
    fail(Errc::parse_error, "node count mismatch: header says " + std::to_string(n_nodes) +
                                ", file has " + std::to_string(d.size()));
  if (d.size() == 0) fail(Errc::parse_error, "empty nnf");
  d.root = d.size() - 1;
  return d;
}

std::string write_c2d(const Nnf& d) {
  // c2d convention: the root is the last node. Children ids are always below
  // their parent, so emitting nodes 0..root keeps the file self-contained.
  long edges = 0;
  for (int i = 0; i <= d.root; ++i) edges += static_cast<long>(d.nodes[i].children.size());
  std::ostringstream out;
  out << "nnf " << d.root + 1 << ' ' << edges << ' ' << d.num_vars << '\n';
  for (int i = 0; i <= d.root; ++i) {
    const auto& n = d.nodes[i];
    switch (n.kind) {
      case Nnf::Kind::True: out << "A 0\n"; break;
      case Nnf::Kind::False: out << "O 0 0\n"; break;
      case Nnf::Kind::Lit: out << "L " << (n.positive ? n.var + 1 : -(n.var + 1)) << '\n'; break;
      case Nnf::Kind::And: {
        out << "A " << n.children.size();
        for (int c : n.children) out << ' ' << c;
        out << '\n';
        break;
      }
      case Nnf::Kind::Or: {
        out << "O 0 " << n.children.size();
        for (int c : n.children) out << ' ' << c;
        out << '\n';
        break;
      }
    }
  }
  return out.str();
}

}  // namespace twc
