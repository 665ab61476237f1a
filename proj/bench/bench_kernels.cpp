// Serial reference against the OpenMP kernels: proof checking and the
// brute-force satisfiability oracle.
#include <benchmark/benchmark.h>

#include <map>

#include "oracle.hpp"
#include "rtl/checker.hpp"
#include "rtl/generators.hpp"
#include "rtl/simulation.hpp"
#include "rtl/solvers.hpp"

using namespace rtl;

namespace {

struct Refutation {
  Formula f;
  Proof p;
};

// DLL refutation of PHP_n, built once per n.
const Refutation& php_refutation(int n) {
  static std::map<int, Refutation> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Formula f = generate_php(n);
  SmallestIndexHeuristic h;
  auto r = dll(f, Assignment{}, h);
  Proof p = trace_to_rt(r.trace, f);
  return cache.emplace(n, Refutation{std::move(f), std::move(p)}).first->second;
}

void check(benchmark::State& state, Execution exec) {
  const Refutation& r = php_refutation(static_cast<int>(state.range(0)));
  const SystemDescriptor sys = SystemDescriptor::rt().with_regular();
  for (auto _ : state) {
    Verdict v = check_proof(r.p, r.f, sys, true, exec);
    benchmark::DoNotOptimize(v);
  }
  state.counters["nodes"] = r.p.size();
  state.SetItemsProcessed(state.iterations() * r.p.size());
}

void BM_CheckSerial(benchmark::State& state) { check(state, Execution::Serial); }
void BM_CheckParallel(benchmark::State& state) { check(state, Execution::Parallel); }

// Unsatisfiable instances force a full enumeration.
void oracle(benchmark::State& state, Execution exec) {
  const int n = static_cast<int>(state.range(0));
  Formula f = generate_random_kcnf(n, 10 * n, 3, 11);
  for (auto _ : state) benchmark::DoNotOptimize(testing::brute_force_sat(f, exec));
  state.counters["vars"] = n;
}

void BM_OracleSerial(benchmark::State& state) { oracle(state, Execution::Serial); }
void BM_OracleParallel(benchmark::State& state) { oracle(state, Execution::Parallel); }

}  // namespace

BENCHMARK(BM_CheckSerial)->DenseRange(4, 6)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CheckParallel)->DenseRange(4, 6)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OracleSerial)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OracleParallel)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
