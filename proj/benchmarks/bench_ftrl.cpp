#include <benchmark/benchmark.h>

#include "dmeta/ftrl.hpp"
#include "dmeta/rng.hpp"

using namespace dmeta;

static void BM_FtrlUpdate(benchmark::State& state) {
    const int t = static_cast<int>(state.range(0));
    Rng rng(21);
    Interval dom(0, 1);
    CellPartition p(dom);
    BallHistory h;
    for (int i = 0; i < t; ++i) {
        Interval b = dom.clip(ball(rng.uniform(0.1, 0.9), rng.uniform(0.03, 0.2)));
        h.balls.push_back(b);
        p = refine(p, b);
    }
    for (auto _ : state) benchmark::DoNotOptimize(ftrl_update(h, p, 0.01, 0.01));
}
BENCHMARK(BM_FtrlUpdate)->Arg(4)->Arg(16)->Arg(64);
