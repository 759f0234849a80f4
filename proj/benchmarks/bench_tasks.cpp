// Downstream task cost on a compiled d-SDNNF.

#include <benchmark/benchmark.h>

#include "twc/compile.hpp"
#include "twc/generators.hpp"
#include "twc/nnf.hpp"

using namespace twc;

namespace {

CompileResult compiled_fixture() {
  SplitMix64 rng(2);
  RandomCircuitParams params;
  params.num_vars = 14;
  params.num_gates = 38;
  params.window = 3;
  Circuit c = gen_random_circuit(rng, params);
  TreeDecomposition td = interval_decomposition(c.size(), 3);
  NiceTreeDecomposition rooted = root_for_compile(make_nice(td, 3), c, c.output);
  return compile_circuit(c, rooted);
}

void BM_ModelCount(benchmark::State& state) {
  CompileResult res = compiled_fixture();
  for (auto _ : state) {
    BigInt n = model_count(res.nnf);
    benchmark::DoNotOptimize(&n);
  }
}

void BM_Probability(benchmark::State& state) {
  CompileResult res = compiled_fixture();
  std::map<int, double> pi;
  for (int v = 0; v < res.nnf.num_vars; ++v) pi[v] = 0.5;
  for (auto _ : state) {
    double p = probability(res.nnf, pi);
    benchmark::DoNotOptimize(p);
  }
}

void BM_Enumerate(benchmark::State& state) {
  CompileResult res = compiled_fixture();
  for (auto _ : state) {
    long count = 0;
    enumerate_models(res.nnf, [&](const Model&) {
      ++count;
      return true;
    });
    benchmark::DoNotOptimize(count);
  }
}

void BM_DeterminismCheck(benchmark::State& state) {
  CompileResult res = compiled_fixture();
  for (auto _ : state) {
    CheckResult r = check_deterministic_exhaustive(res.nnf, 16);
    benchmark::DoNotOptimize(r.ok);
  }
}

}  // namespace

BENCHMARK(BM_ModelCount);
BENCHMARK(BM_Probability);
BENCHMARK(BM_Enumerate);
BENCHMARK(BM_DeterminismCheck);
