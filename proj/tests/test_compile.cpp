#include <doctest.h>

#include <limits>

#include "oracles.hpp"
#include "twc/bounds.hpp"
#include "twc/compile.hpp"
#include "twc/generators.hpp"

using namespace twc;

namespace {

Circuit make_c1() {
  return Circuit::make({GateType::Var, GateType::Var, GateType::And}, {{0, 2}, {1, 2}}, 2);
}

CompileResult compile_with_minfill(const Circuit& c) {
  TreeDecomposition td = minfill(circuit_skeleton(c));
  NiceTreeDecomposition nice = make_nice(td, td.width());
  NiceTreeDecomposition rooted = root_for_compile(nice, c, c.output);
  return compile_circuit(c, rooted);
}

CompileResult compile_with_window(const Circuit& c, int window) {
  TreeDecomposition td = interval_decomposition(c.size(), window);
  NiceTreeDecomposition nice = make_nice(td, window);
  NiceTreeDecomposition rooted = root_for_compile(nice, c, c.output);
  return compile_circuit(c, rooted);
}

void check_all_structural(const CompileResult& res, int det_cap = 16) {
  CHECK(check_nnf(res.nnf).ok);
  CHECK(check_decomposable(res.nnf).ok);
  CHECK(check_structured(res.nnf, res.vtree).ok);
  CHECK(check_deterministic_exhaustive(res.nnf, det_cap).ok);
}

}  // namespace

TEST_CASE("strong and weak values follow the gate table") {
  CHECK(value_strong_for(GateType::And, false));
  CHECK_FALSE(value_strong_for(GateType::And, true));
  CHECK(value_strong_for(GateType::Or, true));
  CHECK_FALSE(value_strong_for(GateType::Or, false));
  CHECK(value_strong_for(GateType::Not, false));
  CHECK(value_strong_for(GateType::Not, true));
  CHECK_FALSE(value_strong_for(GateType::Var, false));
  CHECK_FALSE(value_strong_for(GateType::Var, true));
}

TEST_CASE("unjustified gates per the definition") {
  // gate 0 var, gate 1 or with input 0
  Circuit c = Circuit::make({GateType::Var, GateType::Or}, {{0, 1}}, 1);
  std::vector<GateId> bag{0, 1};
  CHECK(unjustified(c, bag, {{0, false}, {1, true}}) == std::vector<GateId>{1});
  CHECK(unjustified(c, bag, {{0, true}, {1, true}}).empty());
  // var values are weak: a lone var gate is never unjustified
  CHECK(unjustified(c, {0}, {{0, true}}).empty());
  CHECK(unjustified(c, {0}, {{0, false}}).empty());
}

TEST_CASE("almost-evaluation respects strong values") {
  Circuit c = Circuit::make({GateType::Var, GateType::Or}, {{0, 1}}, 1);
  CHECK(is_almost_evaluation(c, {0, 1}, {{0, true}, {1, true}}));
  CHECK_FALSE(is_almost_evaluation(c, {0, 1}, {{0, true}, {1, false}}));
  Circuit cn = Circuit::make({GateType::Var, GateType::Not}, {{0, 1}}, 1);
  CHECK(is_almost_evaluation(cn, {0, 1}, {{0, true}, {1, false}}));
  CHECK_FALSE(is_almost_evaluation(cn, {0, 1}, {{0, true}, {1, true}}));
}

TEST_CASE("connectible means suspicious gates survive upward") {
  CHECK(connectible({}, {5, 7}));
  CHECK(connectible({5}, {5, 7}));
  CHECK_FALSE(connectible({3}, {5, 7}));
}

TEST_CASE("result combines children per the innocence formula") {
  Circuit c = Circuit::make({GateType::Var, GateType::Or}, {{0, 1}}, 1);
  std::vector<GateId> bag{1}, lbag{1}, rbag{1};

  // left innocent, right suspicious: the result is innocent
  EvalPair l{{{1, true}}, {}};
  EvalPair r{{{1, true}}, {1}};
  auto res = result_of(c, bag, lbag, l, rbag, r);
  REQUIRE(res.has_value());
  CHECK(res->nu == Valuation{{1, true}});
  CHECK(res->suspicious.empty());

  // both suspicious and still unjustified: stays suspicious
  EvalPair ls{{{1, true}}, {1}};
  auto res2 = result_of(c, bag, lbag, ls, rbag, r);
  REQUIRE(res2.has_value());
  CHECK(res2->suspicious == std::vector<GateId>{1});

  // disagreement is an error
  EvalPair bad{{{1, false}}, {}};
  CHECK_THROWS_AS(result_of(c, bag, lbag, l, rbag, bad), Error);
}

TEST_CASE("result reports incompatibility on strong-value violations") {
  // bag {var 0, or 1} where children supply nu(0)=1 and nu(1)=0 separately
  Circuit c = Circuit::make({GateType::Var, GateType::Or}, {{0, 1}}, 1);
  EvalPair l{{{0, true}}, {}};
  EvalPair r{{{1, false}}, {}};
  auto res = result_of(c, {0, 1}, {0}, l, {1}, r);
  CHECK_FALSE(res.has_value());
}

TEST_CASE("compile C1 to an equivalent d-SDNNF") {
  Circuit c1 = make_c1();
  CompileResult res = compile_with_minfill(c1);
  CHECK(nnf_circuit_equivalent_exhaustive(res.nnf, c1));
  check_all_structural(res);
  CHECK(model_count(res.nnf) == 1);
}

TEST_CASE("compile SINT_2 and count 7 models") {
  FormulaCircuit fc = formula_to_circuit(gen_sint(2));
  CompileResult res = compile_with_minfill(fc.circuit);
  CHECK(nnf_circuit_equivalent_exhaustive(res.nnf, fc.circuit));
  check_all_structural(res);
  CHECK(model_count(res.nnf) == 7);
  CHECK(probability(res.nnf, {{0, 0.5}, {1, 0.5}, {2, 0.5}, {3, 0.5}}) ==
        doctest::Approx(0.4375).epsilon(1e-12));
}

TEST_CASE("compiled lineage of the path query has one model") {
  // Q_p on a-b-c: single clause {ab, bc} over 2 edge variables
  FormulaCircuit fc = formula_to_circuit(gen_lineage_qp({{0, 1}, {1, 2}}));
  CompileResult res = compile_with_minfill(fc.circuit);
  CHECK(model_count(res.nnf) == 1);
  // the monotone top valuation satisfies it with probability 1
  CHECK(probability(res.nnf, {{0, 1.0}, {1, 1.0}}) == doctest::Approx(1.0));
}

TEST_CASE("enumerating compiled C1 yields exactly {x1,x2}") {
  CompileResult res = compile_with_minfill(make_c1());
  std::vector<Model> models = all_models(res.nnf);
  REQUIRE(models.size() == 1);
  CHECK(models[0].to_line() == "1 2");
}

TEST_CASE("minfill route agrees with the window route on random circuits") {
  SplitMix64 rng(404);
  for (int i = 0; i < 25; ++i) {
    RandomCircuitParams params;
    params.num_vars = 6;
    params.num_gates = 22;
    params.window = 3;
    Circuit c = gen_random_circuit(rng, params);
    CompileResult via_minfill = compile_with_minfill(c);
    CompileResult via_window = compile_with_window(c, 3);
    CHECK(nnf_circuit_equivalent_exhaustive(via_minfill.nnf, c));
    CHECK(nnf_equivalent_exhaustive(via_minfill.nnf, via_window.nnf));
    CHECK(check_deterministic_exhaustive(via_minfill.nnf).ok);
    CHECK(check_structured(via_minfill.nnf, via_minfill.vtree).ok);
  }
}

TEST_CASE("compile handles constant circuits") {
  Circuit t = Circuit::make({GateType::And}, {}, 0);
  CompileResult rt = compile_with_minfill(t);
  CHECK(oracle::eval_nnf(rt.nnf, 0) == true);

  Circuit f = Circuit::make({GateType::Or}, {}, 0);
  CompileResult rf = compile_with_minfill(f);
  CHECK(oracle::eval_nnf(rf.nnf, 0) == false);

  // constant gates feeding the output
  Circuit mixed = Circuit::make({GateType::And, GateType::Or, GateType::Or}, {{0, 2}, {1, 2}}, 2);
  CompileResult rm = compile_with_minfill(mixed);
  CHECK(oracle::eval_nnf(rm.nnf, 0) == true);  // true | false
}

TEST_CASE("compile a var-gate output") {
  Circuit v = Circuit::make({GateType::Var}, {}, 0);
  CompileResult res = compile_with_minfill(v);
  CHECK(nnf_circuit_equivalent_exhaustive(res.nnf, v));
  check_all_structural(res);
}

TEST_CASE("compile rejects an unrooted decomposition") {
  Circuit c1 = make_c1();
  NiceTreeDecomposition nice = make_nice(TreeDecomposition::make({{0, 1, 2}}, {-1}), 2);
  CHECK_THROWS_AS(compile_circuit(c1, nice), Error);
}

TEST_CASE("compile with NOT gates") {
  // out = !(x0 & x1) | x2
  Circuit c = Circuit::make(
      {GateType::Var, GateType::Var, GateType::Var, GateType::And, GateType::Not, GateType::Or},
      {{0, 3}, {1, 3}, {3, 4}, {4, 5}, {2, 5}}, 5);
  CompileResult res = compile_with_minfill(c);
  CHECK(nnf_circuit_equivalent_exhaustive(res.nnf, c));
  check_all_structural(res);
}

TEST_CASE("formula circuits with wide gates compile cleanly") {
  for (const MonotoneFormula& phi :
       {gen_grid_cnf(3, 3), gen_sdisj(3), gen_lineage_qp({{0, 1}, {1, 2}, {2, 0}, {2, 3}})}) {
    FormulaCircuit fc = formula_to_circuit(phi);
    CompileResult res = compile_with_minfill(fc.circuit);
    CHECK(nnf_circuit_equivalent_exhaustive(res.nnf, fc.circuit));
    check_all_structural(res);
    CHECK(model_count(res.nnf) == BigInt(oracle::count_formula(phi)));
  }
}

TEST_CASE("restricting a compiled formula with the dncpi valuation gives SINT") {
  MonotoneFormula phi = gen_lineage_qp({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  FormulaCircuit fc = formula_to_circuit(phi);
  CompileResult res = compile_with_minfill(fc.circuit);
  REQUIRE(nnf_circuit_equivalent_exhaustive(res.nnf, fc.circuit));

  Hypergraph h = hypergraph_of(phi);
  DncpiResult dn = extract_dncpi(phi, psw_exact(h).order);
  REQUIRE(!dn.clauses.empty());
  SintRestriction sr = sint_restriction(phi, dn);
  Nnf restricted = restrict_nnf(res.nnf, sr.nu);

  Nnf ref;
  ref.num_vars = phi.num_vars;
  std::vector<int> parts;
  for (auto [x, y] : sr.pairs)
    parts.push_back(ref.add_and({ref.add_lit(x, true), ref.add_lit(y, true)}));
  ref.root = ref.add_or(std::move(parts));
  CHECK(nnf_equivalent_exhaustive(restricted, ref));
}

TEST_CASE("random corpus: equivalence, structure, size bound, trace uniqueness") {
  SplitMix64 rng(101);
  for (int i = 0; i < 100; ++i) {
    RandomCircuitParams params;
    params.num_vars = 4 + static_cast<int>(rng.below(9));  // 4..12 vars
    params.num_gates = params.num_vars + 8 + static_cast<int>(rng.below(30 - params.num_vars));
    params.window = 1 + static_cast<int>(rng.below(4));  // width 1..4
    Circuit c = gen_random_circuit(rng, params);
    CompileResult res = compile_with_window(c, params.window);

    CHECK(nnf_circuit_equivalent_exhaustive(res.nnf, c));
    CHECK(check_nnf(res.nnf).ok);
    CHECK(check_decomposable(res.nnf).ok);
    CHECK(check_structured(res.nnf, res.vtree).ok);
    CHECK(check_deterministic_exhaustive(res.nnf, 12).ok);

    // |D| <= |T_nice| * 2^(4k+6)
    long long k = res.stats.width;
    long long capacity_exp = 4 * k + 6;
    long long bound = capacity_exp < 62 ? res.stats.bag_count * (1LL << capacity_exp)
                                        : std::numeric_limits<long long>::max();
    CHECK(res.stats.gates_after_gc <= bound);
    CHECK(res.stats.gates_after_gc <= res.stats.gates_created);
  }
}

TEST_CASE("deterministic construction: identical input, identical bytes") {
  SplitMix64 rng1(77), rng2(77);
  RandomCircuitParams params;
  Circuit a = gen_random_circuit(rng1, params);
  Circuit b = gen_random_circuit(rng2, params);
  REQUIRE(write_circuit(a) == write_circuit(b));
  CompileResult ra = compile_with_window(a, params.window);
  CompileResult rb = compile_with_window(b, params.window);
  CHECK(write_c2d(ra.nnf) == write_c2d(rb.nnf));
  CHECK(write_vtree(ra.vtree) == write_vtree(rb.vtree));
}

TEST_CASE("accepting traces are unique on satisfying valuations") {
  // count accepting traces per valuation by brute force: deterministic ORs
  // admit exactly one accepting child
  SplitMix64 rng(909);
  for (int i = 0; i < 20; ++i) {
    RandomCircuitParams params;
    params.num_vars = 5;
    params.num_gates = 16;
    params.window = 2;
    Circuit c = gen_random_circuit(rng, params);
    CompileResult res = compile_with_window(c, 2);
    const Nnf& d = res.nnf;

    for (uint32_t m = 0; m < (1u << 5); ++m) {
      if (!oracle::eval_nnf(d, m)) continue;
      // count traces: product over or-gates in the trace of accepting children
      std::vector<long long> traces(d.size(), 0);
      std::vector<int8_t> val(d.size(), 0);
      for (int n = 0; n < d.size(); ++n) {
        const auto& node = d.nodes[n];
        switch (node.kind) {
          case Nnf::Kind::True: val[n] = 1; traces[n] = 1; break;
          case Nnf::Kind::False: val[n] = 0; traces[n] = 0; break;
          case Nnf::Kind::Lit:
            val[n] = node.positive == static_cast<bool>((m >> node.var) & 1);
            traces[n] = val[n];
            break;
          case Nnf::Kind::And: {
            val[n] = 1;
            traces[n] = 1;
            for (int ch : node.children) {
              val[n] = val[n] && val[ch];
              traces[n] *= traces[ch];
            }
            if (!val[n]) traces[n] = 0;
            break;
          }
          case Nnf::Kind::Or: {
            val[n] = 0;
            traces[n] = 0;
            for (int ch : node.children) {
              val[n] = val[n] || val[ch];
              traces[n] += traces[ch];
            }
            break;
          }
        }
      }
      CHECK(val[d.root] == 1);
      CHECK(traces[d.root] == 1);
    }
  }
}

TEST_CASE("gc pass only removes unreachable gates") {
  FormulaCircuit fc = formula_to_circuit(gen_sint(3));
  TreeDecomposition td = minfill(circuit_skeleton(fc.circuit));
  NiceTreeDecomposition rooted =
      root_for_compile(make_nice(td, td.width()), fc.circuit, fc.output);
  CompileOptions keep;
  keep.gc = false;
  CompileResult with_gc = compile_circuit(fc.circuit, rooted);
  CompileResult without_gc = compile_circuit(fc.circuit, rooted, keep);
  CHECK(with_gc.stats.gates_created == without_gc.stats.gates_created);
  CHECK(with_gc.stats.gates_after_gc <= without_gc.stats.gates_created);
  CHECK(nnf_equivalent_exhaustive(with_gc.nnf, without_gc.nnf));
}

TEST_CASE("compile stats fields are coherent") {
  FormulaCircuit fc = formula_to_circuit(gen_grid_cnf(2, 2));
  CompileResult res = compile_with_minfill(fc.circuit);
  CHECK(res.stats.vars == 4);
  CHECK(res.stats.bag_count > 0);
  CHECK(res.stats.width >= 1);
  CHECK(res.stats.gates_after_gc > 0);
  CHECK(res.stats.wall_ms >= 0.0);
}
