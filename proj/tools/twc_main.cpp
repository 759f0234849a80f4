// twc - compile bounded-treewidth circuits to d-SDNNF, run the tractable
// tasks (probability, counting, enumeration), build OBDDs, and check the
// width-based lower-bound floors on monotone formulas.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "twc/bounds.hpp"
#include "twc/circuit.hpp"
#include "twc/compile.hpp"
#include "twc/decomp.hpp"
#include "twc/generators.hpp"
#include "twc/nnf.hpp"
#include "twc/obdd.hpp"

using namespace twc;

namespace {

// exit codes: 0 ok, 1 parse/io error, 2 semantic check failed, 3 size limit
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCheckFailed = 2;
constexpr int kExitSizeLimit = 3;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::size_limit: return kExitSizeLimit;
    case Errc::invalid_decomposition: return kExitCheckFailed;
    default: return kExitError;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot write " + path);
  out << content;
}

Circuit load_circuit(const std::string& path) {
  std::istringstream in(read_file(path));
  return parse_circuit(in);
}

MonotoneFormula load_formula(const std::string& path) {
  std::istringstream in(read_file(path));
  return parse_dimacs(in);
}

Nnf load_nnf(const std::string& path) {
  std::istringstream in(read_file(path));
  return parse_c2d(in);
}

std::map<int, double> load_probabilities(const std::string& path) {
  std::istringstream in(read_file(path));
  std::map<int, double> pi;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c' || line[0] == '#') continue;
    std::istringstream ls(line);
    int var;
    double p;
    if (!(ls >> var >> p))
      fail(Errc::parse_error, path + " line " + std::to_string(lineno) + ": expected '<var> <p>'");
    pi[var - 1] = p;
  }
  return pi;
}

std::vector<std::pair<int, int>> load_edge_list(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::pair<int, int>> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c' || line[0] == '#') continue;
    std::istringstream ls(line);
    int u, v;
    if (!(ls >> u >> v))
      fail(Errc::parse_error, path + " line " + std::to_string(lineno) + ": expected '<u> <v>'");
    edges.push_back({u, v});
  }
  return edges;
}

// structural gate for prob/count/enum: reject non-d-SDNNF input
void require_dsdnnf(const Nnf& d, int max_exhaustive_vars) {
  CheckResult wf = check_nnf(d);
  if (!wf.ok) fail(Errc::bad_input, "not a well-formed nnf: " + wf.witness);
  CheckResult dec = check_decomposable(d);
  if (!dec.ok) fail(Errc::bad_input, "input is not decomposable: " + dec.witness);
  int used = 0;
  for (const auto& n : d.nodes) used = std::max(used, n.kind == Nnf::Kind::Lit ? n.var + 1 : 0);
  CheckResult det = used <= max_exhaustive_vars ? check_deterministic_exhaustive(d, max_exhaustive_vars)
                                                : check_deterministic_sampled(d, 4096, 1);
  if (!det.ok) fail(Errc::bad_input, "input is not deterministic: " + det.witness);
}

int cmd_gen(const std::string& kind, int n, int rows, int cols, const std::string& graph_path,
            int vars, int gates, int window, uint64_t seed, const std::string& out,
            const std::string& td_out) {
  std::string payload;
  if (kind == "sint") payload = write_dimacs(gen_sint(n));
  else if (kind == "sdisj") payload = write_dimacs(gen_sdisj(n));
  else if (kind == "grid") payload = write_dimacs(gen_grid_cnf(rows, cols));
  else if (kind == "qp") payload = write_dimacs(gen_lineage_qp(load_edge_list(graph_path)));
  else if (kind == "circuit") {
    SplitMix64 rng(seed);
    RandomCircuitParams params;
    params.num_vars = vars;
    params.num_gates = gates;
    params.window = window;
    Circuit c = gen_random_circuit(rng, params);
    payload = write_circuit(c);
    if (!td_out.empty())
      write_file(td_out, write_pace_td(interval_decomposition(c.size(), window), c.size()));
  } else {
    fail(Errc::bad_input, "unknown generator '" + kind + "'");
  }
  if (out.empty())
    std::cout << payload;
  else
    write_file(out, payload);
  return kExitOk;
}

int cmd_compile(const std::string& circuit_path, const std::string& td_path, bool use_minfill,
                std::string out_prefix, bool gc, int max_exhaustive_vars) {
  Circuit c = load_circuit(circuit_path);
  Hypergraph skel = circuit_skeleton(c);

  TreeDecomposition td = [&] {
    if (use_minfill || td_path.empty()) return minfill(skel);
    std::istringstream in(read_file(td_path));
    return parse_pace_td(in);
  }();
  ValidationResult v = validate(td, skel);
  if (!v.ok) fail(Errc::invalid_decomposition, v.message);

  NiceTreeDecomposition nice = make_nice(td, td.width());
  NiceTreeDecomposition rooted = root_for_compile(nice, c, c.output);
  CompileOptions options;
  options.gc = gc;
  CompileResult res = compile_circuit(c, rooted, options);

  bool equiv_checked = false, equiv_ok = true;
  if (static_cast<int>(c.var_gates().size()) <= max_exhaustive_vars) {
    equiv_checked = true;
    equiv_ok = nnf_circuit_equivalent_exhaustive(res.nnf, c, max_exhaustive_vars);
  }

  if (out_prefix.empty()) {
    out_prefix = circuit_path;
    size_t dot = out_prefix.find_last_of('.');
    if (dot != std::string::npos && dot > out_prefix.find_last_of('/') + 1)
      out_prefix = out_prefix.substr(0, dot);
  }
  write_file(out_prefix + ".nnf", write_c2d(res.nnf));
  write_file(out_prefix + ".vtree", write_vtree(res.vtree));

  nlohmann::json stats;
  stats["width"] = res.stats.width;
  stats["bags"] = res.stats.bag_count;
  stats["input_bags"] = td.node_count();  // nice-form growth is bags/input_bags
  stats["vars"] = res.stats.vars;
  stats["gates_created"] = res.stats.gates_created;
  stats["gates_after_gc"] = res.stats.gates_after_gc;
  stats["gc"] = res.stats.gc;
  stats["equiv_checked"] = equiv_checked;
  if (equiv_checked) stats["equiv_ok"] = equiv_ok;
  stats["wall_ms"] = res.stats.wall_ms;
  write_file(out_prefix + ".stats.json", stats.dump(2) + "\n");

  std::cerr << "compiled " << circuit_path << ": width " << res.stats.width << ", "
            << res.stats.gates_after_gc << " gates -> " << out_prefix << ".nnf\n";
  if (equiv_checked && !equiv_ok) fail(Errc::bad_input, "compiled output is not equivalent");
  return kExitOk;
}

int cmd_count(const std::string& nnf_path, int max_exhaustive_vars) {
  Nnf d = load_nnf(nnf_path);
  require_dsdnnf(d, max_exhaustive_vars);
  std::cout << model_count(d) << "\n";
  return kExitOk;
}

int cmd_prob(const std::string& nnf_path, const std::string& prob_path, int max_exhaustive_vars) {
  Nnf d = load_nnf(nnf_path);
  require_dsdnnf(d, max_exhaustive_vars);
  double p = probability(d, load_probabilities(prob_path));
  // all terms are non-negative, so the first-order rounding bound applies
  long ops = 0;
  for (const auto& n : d.nodes) ops += static_cast<long>(n.children.size());
  std::cout.precision(12);
  std::cout << p << "\n";
  std::cerr << "binary64 evaluation, relative rounding error <= " << static_cast<double>(ops)
            << " * 2^-53\n";
  return kExitOk;
}

int cmd_enum(const std::string& nnf_path, bool stream, int max_exhaustive_vars) {
  Nnf d = load_nnf(nnf_path);
  require_dsdnnf(d, max_exhaustive_vars);
  long count = 0;
  auto last = std::chrono::steady_clock::now();
  double max_delay_us = 0.0;
  auto tick = [&] {
    auto now = std::chrono::steady_clock::now();
    max_delay_us = std::max(max_delay_us,
                            std::chrono::duration<double, std::micro>(now - last).count());
    last = now;
    ++count;
  };
  if (stream) {
    enumerate_models(d, [&](const Model& m) {
      tick();
      std::cout << m.to_line() << "\n";
      return true;
    });
  } else {
    std::vector<std::string> lines;
    enumerate_models(d, [&](const Model& m) {
      tick();
      lines.push_back(m.to_line());
      return true;
    });
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) std::cout << l << "\n";
  }
  std::cerr << "enumerated " << count << " assignments, max delay " << max_delay_us << " us\n";
  return kExitOk;
}

int cmd_obdd(const std::string& formula_path, const std::string& order_csv, bool exhaustive,
             bool greedy, const std::string& dump_path, const std::string& profile_path) {
  MonotoneFormula phi = load_formula(formula_path);
  std::vector<int> order;
  if (!order_csv.empty()) {
    std::istringstream ss(order_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) order.push_back(std::stoi(tok) - 1);
  } else if (exhaustive) {
    order = best_order(phi, OrderSearch::Exhaustive).order;
  } else if (greedy) {
    order = best_order(phi, OrderSearch::Greedy).order;
  } else {
    for (int v = 0; v < phi.num_vars; ++v) order.push_back(v);
  }
  Obdd o = obdd_build(phi, order);
  std::cout << "width " << o.width() << " width_with_const " << o.width_with_const() << " size "
            << o.size() << "\n";
  if (!dump_path.empty()) write_file(dump_path, write_obdd(o));
  if (!profile_path.empty()) write_file(profile_path, obdd_profile_json(o) + "\n");
  return kExitOk;
}

int cmd_bounds(const std::string& formula_path, const std::string& out_path, bool with_compile) {
  MonotoneFormula phi = load_formula(formula_path);
  BoundsOptions options;
  options.with_compile = with_compile;
  BoundsReport r = bounds_report(phi, options);
  std::string json = bounds_report_json(r) + "\n";
  if (out_path.empty())
    std::cout << json;
  else
    write_file(out_path, json);
  if (r.obdd_floor_violated || r.obdd_upper_violated || r.dsdnnf_floor_violated) {
    std::cerr << "bounds: a theorem floor is violated; this is a bug signal\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_verify(const std::string& nnf_path, const std::string& vtree_path,
               const std::string& circuit_path, int max_exhaustive_vars) {
  Nnf d = load_nnf(nnf_path);
  bool all_ok = true;
  auto report = [&](const std::string& name, const CheckResult& r) {
    if (r.ok)
      std::cout << "ok   " << name << "\n";
    else
      std::cout << "FAIL " << name << ": " << r.witness << "\n";
    all_ok = all_ok && r.ok;
  };
  report("nnf", check_nnf(d));
  report("decomposable", check_decomposable(d));
  if (!vtree_path.empty()) {
    std::istringstream in(read_file(vtree_path));
    VTree vt = parse_vtree(in, d.num_vars);
    report("structured", check_structured(d, vt));
  }
  int used = 0;
  for (const auto& n : d.nodes) used = std::max(used, n.kind == Nnf::Kind::Lit ? n.var + 1 : 0);
  if (used <= max_exhaustive_vars) {
    report("deterministic (exhaustive)", check_deterministic_exhaustive(d, max_exhaustive_vars));
  } else {
    report("deterministic (sampled)", check_deterministic_sampled(d, 4096, 1));
  }
  if (!circuit_path.empty()) {
    Circuit c = load_circuit(circuit_path);
    if (static_cast<int>(c.var_gates().size()) <= max_exhaustive_vars) {
      CheckResult eq{nnf_circuit_equivalent_exhaustive(d, c, max_exhaustive_vars), ""};
      if (!eq.ok) eq.witness = "function differs from the circuit";
      report("equivalent (exhaustive)", eq);
    } else {
      std::cout << "skip equivalent: circuit exceeds --max-exhaustive-vars\n";
    }
  }
  return all_ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"treewidth-based knowledge compiler and width-bound toolkit"};
  app.require_subcommand(1);

  int max_exhaustive_vars = 16;
  app.add_option("--max-exhaustive-vars", max_exhaustive_vars,
                 "cap for exhaustive oracles (equivalence, determinism)");

  // gen
  auto* gen = app.add_subcommand("gen", "generate formulas, circuits, decompositions");
  std::string gen_kind, gen_out, gen_graph, gen_td_out;
  int gen_n = 2, gen_rows = 2, gen_cols = 2, gen_vars = 12, gen_gates = 30, gen_window = 3;
  uint64_t gen_seed = 1;
  gen->add_option("kind", gen_kind, "sint | sdisj | grid | qp | circuit")->required();
  gen->add_option("-n,--n", gen_n, "size parameter for sint/sdisj");
  gen->add_option("--rows", gen_rows, "grid rows");
  gen->add_option("--cols", gen_cols, "grid cols");
  gen->add_option("--graph", gen_graph, "edge-list file for qp");
  gen->add_option("--vars", gen_vars, "random circuit: variable gates");
  gen->add_option("--gates", gen_gates, "random circuit: total gates");
  gen->add_option("--window", gen_window, "random circuit: wire window (its pathwidth)");
  gen->add_option("--seed", gen_seed, "random circuit seed");
  gen->add_option("-o,--out", gen_out, "output file (stdout when absent)");
  gen->add_option("--with-td", gen_td_out, "also write the window path decomposition (.td)");

  // compile
  auto* compile = app.add_subcommand("compile", "circuit + tree decomposition -> d-SDNNF");
  std::string c_circuit, c_td, c_prefix;
  bool c_minfill = false, c_no_gc = false;
  compile->add_option("circuit", c_circuit, "circuit file")->required();
  compile->add_option("td", c_td, "PACE .td file (optional)");
  compile->add_flag("--minfill", c_minfill, "build the decomposition with min-fill");
  compile->add_option("--out-prefix", c_prefix, "output prefix (default: circuit path sans extension)");
  compile->add_flag("--no-gc", c_no_gc, "keep unreachable gates");

  // count / prob / enum
  auto* count = app.add_subcommand("count", "exact model count of a d-SDNNF");
  std::string n_path, p_path;
  count->add_option("nnf", n_path, "nnf file")->required();
  auto* prob = app.add_subcommand("prob", "probability of a d-SDNNF under independent vars");
  prob->add_option("nnf", n_path, "nnf file")->required();
  prob->add_option("probs", p_path, "probability file: lines '<var> <p>'")->required();
  auto* enum_ = app.add_subcommand("enum", "enumerate satisfying assignments");
  bool e_stream = false;
  enum_->add_option("nnf", n_path, "nnf file")->required();
  enum_->add_flag("--stream", e_stream, "emit in discovery order instead of sorted");

  // obdd
  auto* obdd = app.add_subcommand("obdd", "build an OBDD for a monotone formula");
  std::string o_formula, o_order, o_dump, o_profile;
  bool o_exhaustive = false, o_greedy = false;
  obdd->add_option("formula", o_formula, "DIMACS cnf/dnf file")->required();
  obdd->add_option("--order", o_order, "comma-separated 1-based variable order");
  obdd->add_flag("--exhaustive", o_exhaustive, "exact min-width order (<= 10 vars)");
  obdd->add_flag("--greedy", o_greedy, "split-guided order");
  obdd->add_option("--dump", o_dump, "write the node-level dump");
  obdd->add_option("--profile", o_profile, "write the JSON width profile");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "width measures and theorem floors");
  std::string b_formula, b_out;
  bool b_no_compile = false;
  bounds->add_option("formula", b_formula, "DIMACS cnf/dnf file")->required();
  bounds->add_option("-o,--out", b_out, "write the JSON report here");
  bounds->add_flag("--no-compile", b_no_compile, "skip the compiled-size measurement");

  // verify
  auto* verify = app.add_subcommand("verify", "structural checks on an nnf");
  std::string v_nnf, v_vtree, v_circuit;
  verify->add_option("nnf", v_nnf, "nnf file")->required();
  verify->add_option("--vtree", v_vtree, "v-tree sidecar for the structuredness check");
  verify->add_option("--circuit", v_circuit, "source circuit for the equivalence check");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_gen(gen_kind, gen_n, gen_rows, gen_cols, gen_graph, gen_vars, gen_gates,
                     gen_window, gen_seed, gen_out, gen_td_out);
    if (compile->parsed())
      return cmd_compile(c_circuit, c_td, c_minfill, c_prefix, !c_no_gc, max_exhaustive_vars);
    if (count->parsed()) return cmd_count(n_path, max_exhaustive_vars);
    if (prob->parsed()) return cmd_prob(n_path, p_path, max_exhaustive_vars);
    if (enum_->parsed()) return cmd_enum(n_path, e_stream, max_exhaustive_vars);
    if (obdd->parsed()) return cmd_obdd(o_formula, o_order, o_exhaustive, o_greedy, o_dump, o_profile);
    if (bounds->parsed()) return cmd_bounds(b_formula, b_out, !b_no_compile);
    if (verify->parsed()) return cmd_verify(v_nnf, v_vtree, v_circuit, max_exhaustive_vars);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitOk;
}
