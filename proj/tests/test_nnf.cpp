#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "twc/generators.hpp"
#include "twc/nnf.hpp"

using namespace twc;

namespace {

// or(and(x1,y1), and(x2,y2)) over vars 0..3
Nnf sint2_nnf() {
  Nnf d;
  d.num_vars = 4;
  int x1 = d.add_lit(0, true), y1 = d.add_lit(1, true);
  int x2 = d.add_lit(2, true), y2 = d.add_lit(3, true);
  int a = d.add_and({x1, y1});
  int b = d.add_and({x2, y2});
  d.root = d.add_or({a, b});
  return d;
}

VTree sint2_vtree() {
  // ((x1 y1)(x2 y2))
  VTree vt;
  vt.num_vars = 4;
  int l = vt.add_node();
  vt.attach(l, vt.add_leaf(0));
  vt.attach(l, vt.add_leaf(1));
  int r = vt.add_node();
  vt.attach(r, vt.add_leaf(2));
  vt.attach(r, vt.add_leaf(3));
  int root = vt.add_node();
  vt.attach(root, l);
  vt.attach(root, r);
  vt.root = root;
  return vt;
}

}  // namespace

TEST_CASE("structural checks on the SINT_2 two-level form") {
  Nnf d = sint2_nnf();
  CHECK(check_nnf(d).ok);
  CHECK(check_decomposable(d).ok);
  CHECK(check_structured(d, sint2_vtree()).ok);
  // all-ones satisfies both disjuncts
  CheckResult det = check_deterministic_exhaustive(d);
  CHECK_FALSE(det.ok);
  CHECK(det.witness.find("or gate") != std::string::npos);
}

TEST_CASE("decomposability witness on a shared variable") {
  Nnf d;
  d.num_vars = 1;
  int a = d.add_lit(0, true);
  int b = d.add_lit(0, true);
  d.root = d.add_and({a, b});
  CheckResult r = check_decomposable(d);
  CHECK_FALSE(r.ok);
  CHECK(r.witness.find("var 0") != std::string::npos);

  // the same literal twice is a single input gate, hence decomposable
  Nnf e;
  e.num_vars = 1;
  int l = e.add_lit(0, true);
  e.root = e.add_and({l, l});
  CHECK(check_decomposable(e).ok);
}

TEST_CASE("structuredness fails on a mismatched v-tree") {
  // and(and(x1,y1), and(x2,y2)): no node of ((x1 x2)(y1 y2)) separates
  // {x1,y1} from {x2,y2}
  Nnf d;
  d.num_vars = 4;
  int a = d.add_and({d.add_lit(0, true), d.add_lit(1, true)});
  int b = d.add_and({d.add_lit(2, true), d.add_lit(3, true)});
  d.root = d.add_and({a, b});

  VTree vt;
  vt.num_vars = 4;
  int l = vt.add_node();
  vt.attach(l, vt.add_leaf(0));
  vt.attach(l, vt.add_leaf(2));
  int r = vt.add_node();
  vt.attach(r, vt.add_leaf(1));
  vt.attach(r, vt.add_leaf(3));
  int root = vt.add_node();
  vt.attach(root, l);
  vt.attach(root, r);
  vt.root = root;
  CHECK_FALSE(check_structured(d, vt).ok);

  // the matching v-tree structures it
  CHECK(check_structured(d, sint2_vtree()).ok);
}

TEST_CASE("determinism holds for a decision-style or") {
  Nnf d;
  d.num_vars = 2;
  int x = d.add_lit(0, true), nx = d.add_lit(0, false);
  int y = d.add_lit(1, true);
  int a = d.add_and({x, y});
  int b = d.add_and({nx});
  d.root = d.add_or({a, b});
  CHECK(check_deterministic_exhaustive(d).ok);
}

TEST_CASE("determinism check enforces the size limit") {
  Nnf d;
  d.num_vars = 20;
  std::vector<int> lits;
  for (int v = 0; v < 20; ++v) lits.push_back(d.add_lit(v, true));
  d.root = d.add_or(std::move(lits));
  CHECK_THROWS_AS(check_deterministic_exhaustive(d, 16), Error);
}

TEST_CASE("probability on hand-built deterministic forms") {
  // C1 = x1 & x2
  Nnf c1;
  c1.num_vars = 2;
  int x1 = c1.add_lit(0, true), x2 = c1.add_lit(1, true);
  c1.root = c1.add_and({x1, x2});
  CHECK(probability(c1, {{0, 0.3}, {1, 0.5}}) == doctest::Approx(0.15).epsilon(1e-12));

  CHECK_THROWS_AS(probability(c1, {{0, 1.5}, {1, 0.5}}), Error);
  CHECK_THROWS_AS(probability(c1, {{0, 0.5}}), Error);
}

TEST_CASE("model_count uses the scope gap at or gates") {
  // or(x1, and(x1', x2)) : deterministic, scopes differ across children
  Nnf d;
  d.num_vars = 2;
  int x1 = d.add_lit(0, true);
  int nx1 = d.add_lit(0, false);
  int x2 = d.add_lit(1, true);
  int a = d.add_and({nx1, x2});
  d.root = d.add_or({x1, a});
  // models: {10, 11, 01} over (x1,x2)
  CHECK(model_count(d) == 3);
}

TEST_CASE("model_count pads unused universe variables") {
  Nnf d;
  d.num_vars = 3;  // var 2 never referenced
  int x = d.add_lit(0, true), y = d.add_lit(1, true);
  d.root = d.add_and({x, y});
  CHECK(model_count(d) == 2);  // var 2 free
}

TEST_CASE("enumeration matches brute force with don't-care expansion") {
  Nnf d;
  d.num_vars = 3;
  int x = d.add_lit(0, true), nx = d.add_lit(0, false);
  int y = d.add_lit(1, true);
  int a = d.add_and({x, y});
  d.root = d.add_or({a, d.add_and({nx})});  // x&y | !x ; var 2 don't-care

  std::set<uint32_t> expanded;
  for (const Model& m : all_models(d)) oracle::expand_model(m, 3, expanded);

  std::set<uint32_t> expect;
  for (uint32_t v = 0; v < 8; ++v)
    if (((v & 1) && (v & 2)) || !(v & 1)) expect.insert(v);
  CHECK(expanded == expect);

  // duplicate-free: expansion sizes add up
  size_t total = 0;
  for (const Model& m : all_models(d)) {
    std::set<uint32_t> one;
    oracle::expand_model(m, 3, one);
    total += one.size();
  }
  CHECK(total == expect.size());
  CHECK(model_count(d) == BigInt(expect.size()));
}

TEST_CASE("enumeration of an unsatisfiable form is empty") {
  Nnf d;
  d.num_vars = 1;
  d.root = d.add_false();
  CHECK(all_models(d).empty());
  CHECK(model_count(d) == 0);
}

TEST_CASE("model line format") {
  Model m{Bitset(4), Bitset(4)};
  m.det.set(0);
  m.pos.set(0);  // var 1 true
  m.det.set(1);  // var 2 false
  m.det.set(3);
  m.pos.set(3);        // var 4 true
  // var 3 is don't-care
  CHECK(m.to_line() == "1 3* 4");
}

TEST_CASE("restrict folds constants") {
  Nnf d;
  d.num_vars = 2;
  int x = d.add_lit(0, true), y = d.add_lit(1, true);
  d.root = d.add_or({x, y});
  Nnf t = restrict_nnf(d, {{0, true}});
  CHECK(t.nodes[t.root].kind == Nnf::Kind::True);

  Nnf e;
  e.num_vars = 2;
  int a = e.add_lit(0, true), b = e.add_lit(1, true);
  e.root = e.add_and({a, b});
  Nnf f = restrict_nnf(e, {{0, false}});
  CHECK(f.nodes[f.root].kind == Nnf::Kind::False);
}

TEST_CASE("restrict commutes with evaluation") {
  MonotoneFormula phi = gen_lineage_qp({{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  Nnf d = nnf_from_formula(phi);
  const int nv = phi.num_vars;
  for (uint32_t dom = 0; dom < (1u << 2); ++dom) {
    Valuation rho{{0, static_cast<bool>(dom & 1)}, {2, static_cast<bool>(dom & 2)}};
    Nnf r = restrict_nnf(d, rho);
    CHECK(r.size() <= d.size());
    for (uint32_t m = 0; m < (1u << nv); ++m) {
      uint32_t patched = m;
      for (auto [v, val] : rho) patched = val ? (patched | (1u << v)) : (patched & ~(1u << v));
      CHECK(oracle::eval_nnf(r, m) == oracle::eval_nnf(d, patched));
    }
  }
}

TEST_CASE("c2d parser rejects malformed node lists") {
  // forward child reference
  std::istringstream fwd("nnf 2 1 1\nA 1 1\nL 1\n");
  CHECK_THROWS_AS(parse_c2d(fwd), Error);
  // header/node count mismatch
  std::istringstream count("nnf 3 0 1\nL 1\n");
  CHECK_THROWS_AS(parse_c2d(count), Error);
  // missing header
  std::istringstream hdr("L 1\n");
  CHECK_THROWS_AS(parse_c2d(hdr), Error);
}

TEST_CASE("c2d format round-trip") {
  Nnf d = sint2_nnf();
  std::string text = write_c2d(d);
  std::istringstream in(text);
  Nnf back = parse_c2d(in);
  CHECK(back.size() == d.size());
  CHECK(back.num_vars == 4);
  for (uint32_t m = 0; m < 16; ++m) CHECK(oracle::eval_nnf(back, m) == oracle::eval_nnf(d, m));
  CHECK(write_c2d(back) == text);

  std::istringstream bad("nnf 2 0 1\nL 1\nL 5\n");
  CHECK_THROWS_AS(parse_c2d(bad), Error);
}

TEST_CASE("vtree text round-trip") {
  VTree vt = sint2_vtree();
  std::string text = write_vtree(vt);
  CHECK(text == "((1 2) (3 4))\n");
  std::istringstream in(text);
  VTree back = parse_vtree(in, 4);
  CHECK(back.is_proper());
  CHECK(write_vtree(back) == text);
}

TEST_CASE("nnf equivalence helpers") {
  Nnf a = sint2_nnf();
  Nnf b = nnf_from_formula(gen_sint(2));
  CHECK(nnf_equivalent_exhaustive(a, b));
  FormulaCircuit fc = formula_to_circuit(gen_sint(2));
  CHECK(nnf_circuit_equivalent_exhaustive(a, fc.circuit));
}
