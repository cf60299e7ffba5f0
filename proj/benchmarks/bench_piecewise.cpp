#include <benchmark/benchmark.h>

#include "dmeta/piecewise.hpp"
#include "dmeta/rng.hpp"

using namespace dmeta;

namespace {

PiecewiseConstant random_pc(Rng& rng, int cells) {
    std::vector<double> bps{0.0};
    for (int i = 0; i < cells - 1; ++i) bps.push_back(rng.uniform(0.0, 1.0));
    bps.push_back(1.0);
    std::sort(bps.begin(), bps.end());
    for (std::size_t i = 1; i < bps.size(); ++i)
        if (bps[i] - bps[i - 1] < 1e-9) bps[i] = bps[i - 1] + 1e-9;
    bps.back() = 1.0;
    std::vector<double> vals;
    for (int k = 0; k < cells; ++k) vals.push_back(rng.uniform());
    return PiecewiseConstant(bps, vals);
}

}  // namespace

static void BM_PcAdd(benchmark::State& state) {
    Rng rng(1);
    PiecewiseConstant f = random_pc(rng, static_cast<int>(state.range(0)));
    PiecewiseConstant g = random_pc(rng, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(pc_add(f, g));
}
BENCHMARK(BM_PcAdd)->Arg(16)->Arg(256)->Arg(4096);

static void BM_ExpNegMasses(benchmark::State& state) {
    Rng rng(2);
    PiecewiseConstant f = random_pc(rng, static_cast<int>(state.range(0)));
    Density base = Density::uniform(f.domain());
    for (auto _ : state) benchmark::DoNotOptimize(exp_neg_masses(f, 0.7, base));
}
BENCHMARK(BM_ExpNegMasses)->Arg(16)->Arg(256)->Arg(4096);

static void BM_Argmin(benchmark::State& state) {
    Rng rng(3);
    PiecewiseConstant f = random_pc(rng, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(pc_argmin(f));
}
BENCHMARK(BM_Argmin)->Arg(256)->Arg(4096);

BENCHMARK_MAIN();
