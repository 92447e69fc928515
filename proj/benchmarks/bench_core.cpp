#include <benchmark/benchmark.h>

#include "homtcp/problem.hpp"
#include "homtcp/tracer.hpp"

using namespace homtcp;

namespace {

Vector ramp(int n) {
  Vector x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[i] = 0.5 + 0.25 * i;
  return x;
}

void BM_ContractToVector(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  const TcpProblem p = random_problem(m, n, 1);
  const Vector x = ramp(n);
  for (auto _ : state) benchmark::DoNotOptimize(contract_to_vector(p.tensor, x));
}
BENCHMARK(BM_ContractToVector)->ArgsProduct({{2, 3, 4}, {2, 4}});

void BM_Symmetrize(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  const TcpProblem p = random_problem(m, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(symmetrize(p.tensor));
}
BENCHMARK(BM_Symmetrize)->ArgsProduct({{2, 3, 4}, {2, 4}});

void BM_FullJacobian(benchmark::State& state) {
  const TcpProblem& p = corpus()[0];
  const HomotopyInstance inst(p.tensor, p.q, Anchor::ones(2));
  const HomotopyPoint pt(Vector{0.8, 0.9}, Vector{0.3, 0.2}, Vector{1.1, 0.7}, Vector{0.9, 1.2}, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(inst.eval_full_jacobian(pt));
}
BENCHMARK(BM_FullJacobian);

void BM_TracePathCorpus(benchmark::State& state) {
  const TcpProblem& p = corpus()[static_cast<std::size_t>(state.range(0))];
  const HomotopyInstance inst(p.tensor, p.q, Anchor::ones(p.dim()));
  for (auto _ : state) benchmark::DoNotOptimize(trace_path(inst));
  state.SetLabel(p.name);
}
BENCHMARK(BM_TracePathCorpus)->DenseRange(0, 5)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
