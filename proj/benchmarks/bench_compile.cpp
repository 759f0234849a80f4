// Compilation throughput over decomposition width and circuit size.
// Run: ./benchmarks/twc_bench --benchmark_filter=Compile

#include <benchmark/benchmark.h>

#include "twc/compile.hpp"
#include "twc/generators.hpp"

using namespace twc;

namespace {

CompileResult compile_window(const Circuit& c, int window) {
  TreeDecomposition td = interval_decomposition(c.size(), window);
  NiceTreeDecomposition rooted = root_for_compile(make_nice(td, td.width()), c, c.output);
  return compile_circuit(c, rooted);
}

void BM_CompileRandomWidth(benchmark::State& state) {
  SplitMix64 rng(1);
  RandomCircuitParams params;
  params.num_vars = 12;
  params.num_gates = 36;
  params.window = 1;
  Circuit c = gen_random_circuit(rng, params);
  const int k = static_cast<int>(state.range(0));
  long gates = 0;
  for (auto _ : state) {
    CompileResult res = compile_window(c, k);
    gates = res.stats.gates_after_gc;
    benchmark::DoNotOptimize(res.nnf.nodes.data());
  }
  state.counters["gates"] = static_cast<double>(gates);
}

void BM_CompileGrid(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  FormulaCircuit fc = formula_to_circuit(gen_grid_cnf(m, m));
  TreeDecomposition td = minfill(circuit_skeleton(fc.circuit));
  for (auto _ : state) {
    NiceTreeDecomposition rooted =
        root_for_compile(make_nice(td, td.width()), fc.circuit, fc.output);
    CompileResult res = compile_circuit(fc.circuit, rooted);
    benchmark::DoNotOptimize(res.nnf.nodes.data());
  }
}

}  // namespace

BENCHMARK(BM_CompileRandomWidth)->DenseRange(1, 6);
BENCHMARK(BM_CompileGrid)->DenseRange(2, 5);

BENCHMARK_MAIN();
