#include <benchmark/benchmark.h>

#include "manet/engine.hpp"
#include "manet/mobility.hpp"
#include "manet/protocols.hpp"
#include "manet/topology.hpp"

namespace {

using namespace manet;

std::vector<NodeState> placed(std::size_t n, std::uint64_t seed) {
  ScenarioConfig c;
  c.node_count = n;
  Rng rng(seed);
  return init_mobility(c, rng);
}

void BM_Snapshot(benchmark::State& state) {
  const auto nodes = placed(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(snapshot(nodes, 250.0, 0.0));
}
BENCHMARK(BM_Snapshot)->Arg(50)->Arg(100)->Arg(200);

void BM_Advance(benchmark::State& state) {
  ScenarioConfig c;
  c.node_count = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  auto nodes = init_mobility(c, rng);
  const auto params = RandomWaypointParams::from(c);
  for (auto _ : state) advance(nodes, 0.1, params, rng);
}
BENCHMARK(BM_Advance)->Arg(50)->Arg(100);

template <Protocol P>
void BM_Select(benchmark::State& state) {
  const auto nodes = placed(static_cast<std::size_t>(state.range(0)), 3);
  const auto snap = snapshot(nodes, 250.0, 0.0);
  NodeId d = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_route(P, snap, nodes, 0, d));
    d = d + 1 < nodes.size() ? d + 1 : 1;
  }
}
BENCHMARK(BM_Select<Protocol::Forp>)->Arg(50)->Arg(100);
BENCHMARK(BM_Select<Protocol::Lbr>)->Arg(50)->Arg(100);
BENCHMARK(BM_Select<Protocol::Mmbcr>)->Arg(50)->Arg(100);

void BM_ShortRun(benchmark::State& state) {
  ScenarioConfig c;
  c.duration = 60;
  c.protocol = static_cast<Protocol>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run(c));
}
BENCHMARK(BM_ShortRun)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
