#include "twc/circuit.hpp"

#include <algorithm>
#include <cassert>
#include <istream>
#include <set>
#include <sstream>

namespace twc {

const char* gate_type_name(GateType t) {
  switch (t) {
    case GateType::Var: return "var";
    case GateType::And: return "and";
    case GateType::Or: return "or";
    case GateType::Not: return "not";
  }
  return "?";
}

Circuit Circuit::make(std::vector<GateType> types,
                      const std::vector<std::pair<GateId, GateId>>& wires, GateId output) {
  Circuit c;
  const int n = static_cast<int>(types.size());
  if (n == 0) fail(Errc::bad_input, "circuit has no gates");
  if (output < 0 || output >= n) fail(Errc::bad_input, "output is not a declared gate id");
  c.types = std::move(types);
  c.output = output;
  c.inputs.assign(n, {});
  for (auto [src, dst] : wires) {
    if (src < 0 || src >= n || dst < 0 || dst >= n)
      fail(Errc::bad_input, "wire references undeclared gate id");
    c.inputs[dst].push_back(src);
  }
  for (int g = 0; g < n; ++g) {
    auto& in = c.inputs[g];
    std::sort(in.begin(), in.end());
    in.erase(std::unique(in.begin(), in.end()), in.end());
    if (c.types[g] == GateType::Var && !in.empty())
      fail(Errc::bad_input, "var gate " + std::to_string(g) + " has inputs");
    if (c.types[g] == GateType::Not && in.size() != 1)
      fail(Errc::bad_input, "not gate " + std::to_string(g) + " must have exactly 1 input");
  }

  // Kahn topological order; also detects cycles.
  std::vector<int> missing(n);
  std::vector<std::vector<GateId>> fanout(n);
  for (int g = 0; g < n; ++g) {
    missing[g] = static_cast<int>(c.inputs[g].size());
    for (GateId s : c.inputs[g]) fanout[s].push_back(g);
  }
  std::vector<GateId> queue;
  for (int g = 0; g < n; ++g)
    if (missing[g] == 0) queue.push_back(g);
  c.topo_.reserve(n);
  for (size_t head = 0; head < queue.size(); ++head) {
    GateId g = queue[head];
    c.topo_.push_back(g);
    for (GateId t : fanout[g])
      if (--missing[t] == 0) queue.push_back(t);
  }
  if (static_cast<int>(c.topo_.size()) != n) fail(Errc::bad_input, "wire graph has a cycle");

  c.var_index_.assign(n, -1);
  for (int g = 0; g < n; ++g)
    if (c.types[g] == GateType::Var) {
      c.var_index_[g] = static_cast<int>(c.var_gates_.size());
      c.var_gates_.push_back(g);
    }
  return c;
}

bool evaluate(const Circuit& c, const Valuation& valuation) {
  std::vector<uint64_t> words(c.var_gates().size());
  for (size_t i = 0; i < c.var_gates().size(); ++i) {
    auto it = valuation.find(c.var_gates()[i]);
    if (it == valuation.end())
      fail(Errc::missing_variable,
           "valuation misses var gate " + std::to_string(c.var_gates()[i]));
    words[i] = it->second ? ~0ULL : 0ULL;
  }
  return evaluate_block(c, words) & 1;
}

uint64_t evaluate_block(const Circuit& c, const std::vector<uint64_t>& var_words) {
  assert(var_words.size() == c.var_gates().size());
  std::vector<uint64_t> val(c.size());
  for (GateId g : c.topo_order()) {
    switch (c.types[g]) {
      case GateType::Var:
        val[g] = var_words[c.var_index(g)];
        break;
      case GateType::And: {
        uint64_t acc = ~0ULL;
        for (GateId s : c.inputs[g]) acc &= val[s];
        val[g] = acc;
        break;
      }
      case GateType::Or: {
        uint64_t acc = 0;
        for (GateId s : c.inputs[g]) acc |= val[s];
        val[g] = acc;
        break;
      }
      case GateType::Not:
        val[g] = ~val[c.inputs[g][0]];
        break;
    }
  }
  return val[c.output];
}

Bitset circuit_truth_table(const Circuit& c) {
  const int nv = static_cast<int>(c.var_gates().size());
  if (nv > 26) fail(Errc::size_limit, "truth table limited to 26 variables");
  const uint64_t total = 1ULL << nv;
  Bitset table(static_cast<int>(total));
  std::vector<uint64_t> words(nv);
  for (uint64_t base = 0; base < total; base += 64) {
    for (int i = 0; i < nv; ++i) {
      if (i < 6) {
        // bit patterns of the 64 in-word valuations
        static const uint64_t lane[6] = {0xaaaaaaaaaaaaaaaaULL, 0xccccccccccccccccULL,
                                         0xf0f0f0f0f0f0f0f0ULL, 0xff00ff00ff00ff00ULL,
                                         0xffff0000ffff0000ULL, 0xffffffff00000000ULL};
        words[i] = lane[i];
      } else {
        words[i] = ((base >> i) & 1) ? ~0ULL : 0ULL;
      }
    }
    uint64_t out = evaluate_block(c, words);
    uint64_t left = total - base;
    int lanes = left >= 64 ? 64 : static_cast<int>(left);
    for (int t = 0; t < lanes; ++t)
      if ((out >> t) & 1) table.set(static_cast<int>(base + t));
  }
  return table;
}

int Hypergraph::arity() const {
  size_t a = 0;
  for (const auto& e : edges) a = std::max(a, e.size());
  return static_cast<int>(a);
}

int Hypergraph::degree() const {
  std::vector<int> deg(num_vertices, 0);
  for (const auto& e : edges)
    for (int v : e) ++deg[v];
  int d = 0;
  for (int x : deg) d = std::max(d, x);
  return d;
}

std::vector<std::vector<int>> Hypergraph::incident_edges() const {
  std::vector<std::vector<int>> inc(num_vertices);
  for (size_t i = 0; i < edges.size(); ++i)
    for (int v : edges[i]) inc[v].push_back(static_cast<int>(i));
  return inc;
}

Hypergraph Hypergraph::make(int num_vertices, std::vector<std::vector<int>> edges) {
  if (edges.empty()) fail(Errc::bad_input, "hypergraph must have at least one edge");
  Hypergraph h;
  h.num_vertices = num_vertices;
  for (auto& e : edges) {
    if (e.empty()) fail(Errc::bad_input, "hypergraph edge must be non-empty");
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    for (int v : e)
      if (v < 0 || v >= num_vertices) fail(Errc::bad_input, "edge vertex out of range");
  }
  h.edges = std::move(edges);
  return h;
}

bool MonotoneFormula::eval(const std::vector<uint8_t>& assignment) const {
  if (kind == FormulaKind::Dnf) {
    for (const auto& cl : clauses) {
      bool all = true;
      for (int v : cl) all = all && assignment[v];
      if (all) return true;
    }
    return false;
  }
  for (const auto& cl : clauses) {
    bool any = false;
    for (int v : cl) any = any || assignment[v];
    if (!any) return false;
  }
  return true;
}

MonotoneFormula MonotoneFormula::make(FormulaKind kind, int num_vars,
                                      std::vector<std::vector<int>> clauses) {
  MonotoneFormula phi;
  phi.kind = kind;
  phi.num_vars = num_vars;
  for (auto& cl : clauses) {
    if (cl.empty()) fail(Errc::bad_input, "empty clause");
    std::sort(cl.begin(), cl.end());
    cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
    for (int v : cl)
      if (v < 0 || v >= num_vars) fail(Errc::bad_input, "clause variable out of range");
  }
  if (clauses.empty()) fail(Errc::bad_input, "formula must have at least one clause");
  std::sort(clauses.begin(), clauses.end());
  clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());

  // subset minimization, O(m^2 * arity)
  std::vector<bool> dead(clauses.size(), false);
  for (size_t i = 0; i < clauses.size(); ++i)
    for (size_t j = 0; j < clauses.size(); ++j) {
      if (i == j || dead[i] || dead[j]) continue;
      if (std::includes(clauses[j].begin(), clauses[j].end(), clauses[i].begin(),
                        clauses[i].end()))
        dead[j] = true;  // clause i is a subset of clause j
    }
  for (size_t i = 0; i < clauses.size(); ++i)
    if (!dead[i]) phi.clauses.push_back(std::move(clauses[i]));

  std::vector<int> deg(num_vars, 0);
  for (const auto& cl : phi.clauses) {
    phi.arity_ = std::max(phi.arity_, static_cast<int>(cl.size()));
    for (int v : cl) phi.degree_ = std::max(phi.degree_, ++deg[v]);
  }
  return phi;
}

Hypergraph hypergraph_of(const MonotoneFormula& phi) {
  return Hypergraph::make(phi.num_vars, phi.clauses);
}

Hypergraph circuit_skeleton(const Circuit& c) {
  std::vector<std::vector<int>> edges;
  std::vector<bool> touched(c.size(), false);
  for (int g = 0; g < c.size(); ++g)
    for (GateId s : c.inputs[g]) {
      edges.push_back({std::min(s, g), std::max(s, g)});
      touched[s] = touched[g] = true;
    }
  for (int g = 0; g < c.size(); ++g)
    if (!touched[g]) edges.push_back({g});
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Hypergraph::make(c.size(), std::move(edges));
}

FormulaCircuit formula_to_circuit(const MonotoneFormula& phi) {
  FormulaCircuit fc;
  const int nv = phi.num_vars;
  const int nc = static_cast<int>(phi.clauses.size());
  std::vector<GateType> types(nv + nc + 1);
  std::vector<std::pair<GateId, GateId>> wires;
  GateType clause_type = phi.kind == FormulaKind::Dnf ? GateType::And : GateType::Or;
  GateType top_type = phi.kind == FormulaKind::Dnf ? GateType::Or : GateType::And;
  for (int v = 0; v < nv; ++v) types[v] = GateType::Var;
  for (int i = 0; i < nc; ++i) {
    types[nv + i] = clause_type;
    for (int v : phi.clauses[i]) wires.push_back({v, nv + i});
    wires.push_back({nv + i, nv + nc});
  }
  types[nv + nc] = top_type;
  fc.output = nv + nc;
  fc.circuit = Circuit::make(std::move(types), wires, fc.output);
  for (int v = 0; v < nv; ++v) fc.var_gate.push_back(v);
  for (int i = 0; i < nc; ++i) fc.clause_gate.push_back(nv + i);
  return fc;
}

// --- text formats ---

namespace {

std::vector<std::string> read_content_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

Circuit parse_circuit(std::istream& in) {
  auto lines = read_content_lines(in);
  size_t li = 0;
  auto next_line = [&]() -> const std::string* {
    while (li < lines.size()) {
      const std::string& l = lines[li++];
      if (l.empty() || l[0] == '#') continue;
      return &lines[li - 1];
    }
    return nullptr;
  };

  const std::string* header = next_line();
  if (!header) fail(Errc::parse_error, "empty circuit file");
  std::istringstream hs(*header);
  std::string word;
  int n_gates = -1, output = -1;
  if (!(hs >> word >> n_gates >> output) || word != "circuit")
    fail(Errc::parse_error, "line 1: expected 'circuit <n_gates> <output_id>'");
  if (n_gates <= 0) fail(Errc::parse_error, "line 1: gate count must be positive");

  std::vector<GateType> types(n_gates);
  std::vector<bool> seen(n_gates, false);
  std::vector<std::pair<GateId, GateId>> wires;
  for (int i = 0; i < n_gates; ++i) {
    const std::string* l = next_line();
    if (!l) fail(Errc::parse_error, "unexpected end of file: expected " +
                                        std::to_string(n_gates) + " gate lines");
    std::istringstream ls(*l);
    int id;
    std::string ty;
    if (!(ls >> id >> ty))
      fail(Errc::parse_error, "line " + std::to_string(li) + ": expected '<id> <type> ...'");
    if (id < 0 || id >= n_gates || seen[id])
      fail(Errc::parse_error, "line " + std::to_string(li) + ": bad or duplicate gate id");
    seen[id] = true;
    GateType t;
    if (ty == "var")
      t = GateType::Var;
    else if (ty == "and")
      t = GateType::And;
    else if (ty == "or")
      t = GateType::Or;
    else if (ty == "not")
      t = GateType::Not;
    else
      fail(Errc::parse_error, "line " + std::to_string(li) + ": unknown gate type '" + ty + "'");
    types[id] = t;
    int src;
    while (ls >> src) wires.push_back({src, id});
  }
  try {
    return Circuit::make(std::move(types), wires, output);
  } catch (const Error& e) {
    fail(Errc::parse_error, std::string("invalid circuit: ") + e.what());
  }
}

std::string write_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "circuit " << c.size() << ' ' << c.output << '\n';
  for (int g = 0; g < c.size(); ++g) {
    out << g << ' ' << gate_type_name(c.types[g]);
    for (GateId s : c.inputs[g]) out << ' ' << s;
    out << '\n';
  }
  return out.str();
}

MonotoneFormula parse_dimacs(std::istream& in) {
  auto lines = read_content_lines(in);
  FormulaKind kind = FormulaKind::Cnf;
  int nv = -1, nc = -1;
  std::vector<std::vector<int>> clauses;
  bool saw_header = false;
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& l = lines[i];
    if (l.empty() || l[0] == 'c' || l[0] == '%') continue;
    std::istringstream ls(l);
    if (l[0] == 'p') {
      std::string p, fmt;
      if (!(ls >> p >> fmt >> nv >> nc) || (fmt != "cnf" && fmt != "dnf"))
        fail(Errc::parse_error, "line " + std::to_string(i + 1) + ": expected 'p cnf|dnf V C'");
      kind = fmt == "cnf" ? FormulaKind::Cnf : FormulaKind::Dnf;
      saw_header = true;
      continue;
    }
    if (!saw_header)
      fail(Errc::parse_error, "line " + std::to_string(i + 1) + ": clause before header");
    std::vector<int> clause;
    long lit;
    while (ls >> lit) {
      if (lit == 0) break;
      if (lit < 0)
        fail(Errc::parse_error,
             "line " + std::to_string(i + 1) + ": negative literal in monotone formula");
      if (lit > nv)
        fail(Errc::parse_error, "line " + std::to_string(i + 1) + ": literal above var count");
      clause.push_back(static_cast<int>(lit) - 1);
    }
    if (!clause.empty()) clauses.push_back(std::move(clause));
  }
  if (!saw_header) fail(Errc::parse_error, "missing 'p cnf|dnf' header");
  if (static_cast<int>(clauses.size()) != nc && nc >= 0) {
    // tolerated, like most DIMACS consumers; counts are advisory
  }
  try {
    return MonotoneFormula::make(kind, nv, std::move(clauses));
  } catch (const Error& e) {
    fail(Errc::parse_error, std::string("invalid formula: ") + e.what());
  }
}

std::string write_dimacs(const MonotoneFormula& phi) {
  std::ostringstream out;
  out << "p " << (phi.kind == FormulaKind::Cnf ? "cnf" : "dnf") << ' ' << phi.num_vars << ' '
      << phi.clauses.size() << '\n';
  for (const auto& cl : phi.clauses) {
    for (int v : cl) out << (v + 1) << ' ';
    out << "0\n";
  }
  return out.str();
}

}  // namespace twc
