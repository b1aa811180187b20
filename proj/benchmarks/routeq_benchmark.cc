#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "routeq/adversarial.h"
#include "routeq/equilibrium.h"
#include "routeq/sp_tree.h"

namespace routeq {
namespace {

// Ladder of k parallel pairs in series: 2^k simple paths.
Network Ladder(int k) {
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i) {
    std::string a = i == 0 ? "s" : "v" + std::to_string(i);
    std::string b = i == k - 1 ? "t" : "v" + std::to_string(i + 1);
    edges.push_back({"a" + std::to_string(i), a, b});
    edges.push_back({"b" + std::to_string(i), a, b});
  }
  return Network::FromEdges(edges);
}

void BM_SpDecomposeLadder(benchmark::State& state) {
  Network net = Ladder(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(SpDecompose(net, "s", "t"));
}
BENCHMARK(BM_SpDecomposeLadder)->Arg(4)->Arg(16)->Arg(64);

void BM_SolveLadder(benchmark::State& state) {
  int k = static_cast<int>(state.range(0));
  Instance inst;
  inst.network = Ladder(k);
  for (int i = 0; i < k; ++i) {
    inst.functions["a" + std::to_string(i)] = {CostFn::Affine(1, 0),
                                               CostFn::Constant(0.5)};
    inst.functions["b" + std::to_string(i)] = {CostFn::Affine(2, 0.25),
                                               CostFn::Constant(0)};
  }
  inst.commodities.push_back({{"s", "t"}, {{0, 0.5}, {1, 0.5}}});
  for (auto _ : state) benchmark::DoNotOptimize(SolveEquilibrium(inst, {}));
}
BENCHMARK(BM_SolveLadder)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_BraessHurt(benchmark::State& state) {
  std::vector<DemandClass> classes = {{0, 0.5}, {2, 0.5}};
  for (auto _ : state) benchmark::DoNotOptimize(BraessHurt(classes));
}
BENCHMARK(BM_BraessHurt)->Unit(benchmark::kMillisecond);

void BM_TwoCommodityHurt(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(TwoCommodityHurt());
}
BENCHMARK(BM_TwoCommodityHurt)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace routeq

BENCHMARK_MAIN();
