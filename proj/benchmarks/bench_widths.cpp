// Width machinery: exact solvers and OBDD order search.

#include <benchmark/benchmark.h>

#include "twc/bounds.hpp"
#include "twc/decomp.hpp"
#include "twc/generators.hpp"
#include "twc/obdd.hpp"

using namespace twc;

namespace {

void BM_ExactTreewidth(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Hypergraph h = hypergraph_of(gen_grid_cnf(3, m));
  for (auto _ : state) benchmark::DoNotOptimize(exact_treewidth(h));
}

void BM_ExactPathwidth(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Hypergraph h = hypergraph_of(gen_grid_cnf(3, m));
  for (auto _ : state) benchmark::DoNotOptimize(exact_pathwidth(h));
}

void BM_PswExact(benchmark::State& state) {
  Hypergraph h = hypergraph_of(gen_grid_cnf(3, 4));
  for (auto _ : state) benchmark::DoNotOptimize(psw_exact(h).width);
}

void BM_ObddExhaustiveOrder(benchmark::State& state) {
  MonotoneFormula phi = gen_grid_cnf(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(best_order(phi, OrderSearch::Exhaustive).width);
}

void BM_Minfill(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Hypergraph h = hypergraph_of(gen_grid_cnf(m, m));
  for (auto _ : state) benchmark::DoNotOptimize(minfill(h).width());
}

}  // namespace

BENCHMARK(BM_ExactTreewidth)->DenseRange(3, 5);
BENCHMARK(BM_ExactPathwidth)->DenseRange(3, 5);
BENCHMARK(BM_PswExact);
BENCHMARK(BM_ObddExhaustiveOrder)->DenseRange(3, 5);
BENCHMARK(BM_Minfill)->DenseRange(3, 6);
