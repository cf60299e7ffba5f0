#include <benchmark/benchmark.h>

#include "dmeta/tasks.hpp"

using namespace dmeta;

static void BM_KnapsackLoss(benchmark::State& state) {
    Rng rng(31);
    KnapsackInstance inst = knapsack_gen(1.0, rng);
    Interval dom(0, 10);
    for (auto _ : state) benchmark::DoNotOptimize(knapsack_loss(inst, dom));
}
BENCHMARK(BM_KnapsackLoss);

static void BM_LloydSeedLoss(benchmark::State& state) {
    Rng rng(32);
    ClusterDataset data = gaussian_mixture_gen(2.5, 2.0, rng);
    std::vector<double> u{rng.uniform(), rng.uniform()};
    Interval dom(0, 10);
    for (auto _ : state) benchmark::DoNotOptimize(lloyd_seed_loss(data, dom, u));
}
BENCHMARK(BM_LloydSeedLoss);

static void BM_MwisLoss(benchmark::State& state) {
    Rng rng(33);
    WeightedGraph g = mwis_gen(static_cast<int>(state.range(0)), 0.25, 0.0, rng);
    Interval dom(0, 10);
    for (auto _ : state) benchmark::DoNotOptimize(mwis_loss(g, dom));
}
BENCHMARK(BM_MwisLoss)->Arg(12)->Arg(20);
