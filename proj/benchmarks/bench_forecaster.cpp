#include <benchmark/benchmark.h>

#include "dmeta/forecaster.hpp"
#include "dmeta/robust.hpp"

using namespace dmeta;

static void BM_RunTaskHalving(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    Rng gen(11);
    Interval dom(0, 1);
    auto losses = halving_losses(m, 0.5, 1.0, 0.0, dom, gen, nullptr);
    for (auto _ : state) {
        Rng play(17);
        benchmark::DoNotOptimize(ef_run_task(losses, Density::uniform(dom), 0.1, play));
    }
}
BENCHMARK(BM_RunTaskHalving)->Arg(64)->Arg(256)->Arg(1024);

static void BM_SampleWideState(benchmark::State& state) {
    Rng gen(12);
    Interval dom(0, 1);
    auto losses = halving_losses(static_cast<int>(state.range(0)), 0.5, 1.0, 0.0, dom, gen, nullptr);
    ForecasterState s = ef_init(dom, Density::uniform(dom), 0.2);
    for (const auto& l : losses) s = ef_update(std::move(s), l);
    Rng play(13);
    for (auto _ : state) benchmark::DoNotOptimize(ef_sample(s, play));
}
BENCHMARK(BM_SampleWideState)->Arg(256)->Arg(1024);
