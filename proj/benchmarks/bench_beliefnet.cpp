#include <benchmark/benchmark.h>

#include "beliefnet/beliefnet.hpp"

using namespace beliefnet;

namespace {

BeliefProfile alternating(std::size_t n) {
  std::vector<Belief> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = belief_of(i % 2 == 0);
  return BeliefProfile(b);
}

void BM_ApplyAll(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto net = families::cycle(n);
  const auto fam = FunctionFamily::uniform(net, "majority");
  auto p = alternating(n);
  for (auto _ : state) {
    p = apply_all(net, fam, p);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_ApplyAll)->Arg(16)->Arg(256)->Arg(4096);

void BM_TransitionGraph(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto net = families::complete_bipartite(n / 2, n - n / 2);
  const auto fam = FunctionFamily::uniform(net, "majority");
  for (auto _ : state) {
    auto graph = build_transition_graph(net, fam);
    benchmark::DoNotOptimize(condense(graph).component_count());
  }
}
BENCHMARK(BM_TransitionGraph)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_AllAxioms(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto net = families::cycle(n);
  const auto fam = FunctionFamily::uniform(net, "majority");
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_axioms(net, fam, kAllAxioms));
  }
}
BENCHMARK(BM_AllAxioms)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_RandomRun(benchmark::State& state) {
  const auto net = families::complete_bipartite(2, 2);
  const auto fam = FunctionFamily::uniform(net, "majority");
  const auto initial = BeliefProfile::parse("1100");
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto trace = run_random(net, fam, initial, RandomActivation::uniform(net, 0.5, seed++), 1000);
    benchmark::DoNotOptimize(trace.converged());
  }
}
BENCHMARK(BM_RandomRun);

void BM_ConvergingSequence(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto net = families::cycle(n);
  const auto fam = FunctionFamily::uniform(net, "majority");
  const auto p = alternating(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(construct_converging_sequence(net, fam, p).result);
  }
}
BENCHMARK(BM_ConvergingSequence)->Arg(16)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
