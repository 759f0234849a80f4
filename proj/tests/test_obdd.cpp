#include <doctest.h>

#include "oracles.hpp"
#include "twc/generators.hpp"
#include "twc/obdd.hpp"

using namespace twc;

TEST_CASE("conjunction has width 1 per level") {
  MonotoneFormula phi = MonotoneFormula::make(FormulaKind::Dnf, 2, {{0, 1}});
  Obdd o = obdd_build(phi, {0, 1});
  CHECK(o.width() == 1);
  CHECK(o.width() == oracle::obdd_width_oracle(phi, {0, 1}));
  for (uint32_t m = 0; m < 4; ++m) {
    std::vector<uint8_t> a{static_cast<uint8_t>(m & 1), static_cast<uint8_t>((m >> 1) & 1)};
    CHECK(obdd_eval(o, a) == oracle::eval_formula(phi, m));
  }
}

TEST_CASE("SINT_2 cut after (x1,x2) has 4 distinct subfunctions") {
  MonotoneFormula s2 = gen_sint(2);
  std::vector<int> order{0, 2, 1, 3};  // x1, x2, y1, y2
  auto [nonconst, total] = oracle::obdd_level_oracle(s2, order, 2);
  CHECK(total == 4);     // 0, y1, y2, y1|y2
  CHECK(nonconst == 3);  // the constant residual is excluded from width
  Obdd o = obdd_build(s2, order);
  CHECK(o.level_width[2] == 3);
  CHECK(o.level_width_with_const[2] == 4);
  CHECK(o.width() == oracle::obdd_width_oracle(s2, order));
}

TEST_CASE("constant-true circuit builds a single leaf") {
  Circuit t = Circuit::make({GateType::And}, {}, 0);
  Obdd o = obdd_build(t, {});
  CHECK(o.root == 1);
  CHECK(o.width() == 0);
  CHECK(o.size() == 1);
}

TEST_CASE("build agrees with the source on all valuations") {
  SplitMix64 rng(31);
  for (const MonotoneFormula& phi :
       {gen_sint(3), gen_sdisj(3), gen_grid_cnf(2, 3), gen_lineage_qp({{0, 1}, {1, 2}, {2, 0}})}) {
    std::vector<int> order(phi.num_vars);
    for (int i = 0; i < phi.num_vars; ++i) order[i] = i;
    for (int shuffle = 0; shuffle < 3; ++shuffle) {
      for (int i = phi.num_vars - 1; i > 0; --i)
        std::swap(order[i], order[rng.below(i + 1)]);
      Obdd o = obdd_build(phi, order);
      for (uint32_t m = 0; m < (1u << phi.num_vars); ++m) {
        std::vector<uint8_t> a(phi.num_vars);
        for (int v = 0; v < phi.num_vars; ++v) a[v] = (m >> v) & 1;
        CHECK(obdd_eval(o, a) == oracle::eval_formula(phi, m));
      }
      CHECK(o.width() == oracle::obdd_width_oracle(phi, order));
      // |O| <= |V| x width plus the two constant leaves
      CHECK(o.size() <= (phi.num_vars + 1) * std::max(o.width(), 1) + 2);
    }
  }
}

TEST_CASE("level profiles match the prefix-enumeration oracle in both variants") {
  // includes an early-dying branch: the 0 leaf is reached from level 1 on
  MonotoneFormula chain = MonotoneFormula::make(FormulaKind::Dnf, 3, {{0, 1, 2}});
  for (const MonotoneFormula& phi : {chain, gen_sint(2), gen_grid_cnf(2, 2)}) {
    std::vector<int> order(phi.num_vars);
    for (int i = 0; i < phi.num_vars; ++i) order[i] = i;
    Obdd o = obdd_build(phi, order);
    for (int i = 0; i <= phi.num_vars; ++i) {
      auto [nonconst, total] = oracle::obdd_level_oracle(phi, order, i);
      CHECK(o.level_width[i] == nonconst);
      CHECK(o.level_width_with_const[i] == total);
    }
  }
}

TEST_CASE("exhaustive order search matches brute force over all orders") {
  for (const MonotoneFormula& phi :
       {gen_sint(2), gen_sdisj(2), gen_grid_cnf(2, 2),
        MonotoneFormula::make(FormulaKind::Dnf, 5, {{0, 1, 2}, {2, 3}, {3, 4}})}) {
    BestOrder best = best_order(phi, OrderSearch::Exhaustive);
    CHECK(best.width == oracle::obdd_min_width_oracle(phi));
    CHECK(obdd_build(phi, best.order).width() == best.width);
  }
}

TEST_CASE("SINT_2 exhaustive min width is 2") {
  BestOrder best = best_order(gen_sint(2), OrderSearch::Exhaustive);
  CHECK(best.width == 2);
}

TEST_CASE("single-clause DNF has min width 1") {
  MonotoneFormula phi = MonotoneFormula::make(FormulaKind::Dnf, 4, {{0, 1, 2, 3}});
  BestOrder best = best_order(phi, OrderSearch::Exhaustive);
  CHECK(best.width == 1);
}

TEST_CASE("greedy order is usable and never beats the exhaustive optimum") {
  for (const MonotoneFormula& phi : {gen_sint(3), gen_grid_cnf(2, 3)}) {
    BestOrder greedy = best_order(phi, OrderSearch::Greedy);
    BestOrder exact = best_order(phi, OrderSearch::Exhaustive);
    CHECK(greedy.width >= exact.width);
    CHECK(obdd_build(phi, greedy.order).width() == greedy.width);
  }
}

TEST_CASE("exhaustive search enforces the variable cap") {
  CHECK_THROWS_AS(best_order(gen_sint(6), OrderSearch::Exhaustive), Error);
}

TEST_CASE("dualize captures the De Morgan dual") {
  MonotoneFormula dnf = MonotoneFormula::make(FormulaKind::Dnf, 2, {{0, 1}});
  MonotoneFormula dual = MonotoneFormula::make(FormulaKind::Cnf, 2, {{0, 1}});
  Obdd o = obdd_build(dnf, {0, 1});
  Obdd d = dualize(o);
  // dual of x&y as a DNF-hypergraph twin: the CNF x|y... via De Morgan,
  // f'(v) = 1 - f(1-v)
  for (uint32_t m = 0; m < 4; ++m) {
    std::vector<uint8_t> a{static_cast<uint8_t>(m & 1), static_cast<uint8_t>((m >> 1) & 1)};
    std::vector<uint8_t> flipped{static_cast<uint8_t>(1 - a[0]), static_cast<uint8_t>(1 - a[1])};
    CHECK(obdd_eval(d, a) == !obdd_eval(o, flipped));
    CHECK(obdd_eval(d, a) == oracle::eval_formula(dual, m));
  }
  CHECK(d.width() == o.width());
  CHECK(d.nodes.size() == o.nodes.size());
  CHECK(d.level_width == o.level_width);

  // involution
  Obdd dd = dualize(d);
  for (uint32_t m = 0; m < 4; ++m) {
    std::vector<uint8_t> a{static_cast<uint8_t>(m & 1), static_cast<uint8_t>((m >> 1) & 1)};
    CHECK(obdd_eval(dd, a) == obdd_eval(o, a));
  }
}

TEST_CASE("dualize on sdisj matches sint") {
  // (x1|y1)&(x2|y2) is the De Morgan dual of (x1&y1)|(x2&y2)
  Obdd o = obdd_build(gen_sint(2), {0, 1, 2, 3});
  Obdd d = dualize(o);
  MonotoneFormula sdisj = gen_sdisj(2);
  for (uint32_t m = 0; m < 16; ++m) {
    std::vector<uint8_t> a(4);
    for (int v = 0; v < 4; ++v) a[v] = (m >> v) & 1;
    CHECK(obdd_eval(d, a) == oracle::eval_formula(sdisj, m));
  }
}

TEST_CASE("obdd text dump and profile") {
  Obdd o = obdd_build(gen_sint(2), {0, 1, 2, 3});
  std::string dump = write_obdd(o);
  CHECK(dump.find("order 1 2 3 4") == 0);
  CHECK(dump.find("root") != std::string::npos);
  std::string json = obdd_profile_json(o);
  CHECK(json.find("\"width\":") != std::string::npos);
}
