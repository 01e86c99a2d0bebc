#include <benchmark/benchmark.h>

#include "mwc/certify.hpp"
#include "mwc/ckr.hpp"
#include "mwc/density.hpp"
#include "mwc/exchangeable.hpp"
#include "mwc/montecarlo.hpp"
#include "mwc/schemes.hpp"

using namespace mwc;

static void BM_Certify1296(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(certify(Algorithm::A1296, p, 1).grid_max);
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << p) * (std::int64_t{1} << p) / 2);
}
BENCHMARK(BM_Certify1296)->Arg(10)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);

static void BM_Certify1309(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(certify(Algorithm::A1309, 12, 1).grid_max);
}
BENCHMARK(BM_Certify1309)->Unit(benchmark::kMillisecond);

static void BM_DensitySample(benchmark::State& state) {
    const auto phi = phi_tilde_1296();
    double u = 0.0;
    for (auto _ : state) {
        u += 0.6180339887498949;
        if (u >= 1.0) u -= 1.0;
        benchmark::DoNotOptimize(phi.sample(u));
    }
}
BENCHMARK(BM_DensitySample);

static void BM_DrawPartition(benchmark::State& state) {
    const auto mix = mixture_1296();
    const int k = static_cast<int>(state.range(0));
    const RandomSource base(1);
    std::uint64_t t = 0;
    for (auto _ : state) benchmark::DoNotOptimize(draw_partition(mix, k, base.split(t++)));
}
BENCHMARK(BM_DrawPartition)->Arg(3)->Arg(10)->Arg(100);

static void BM_EstimateDensity(benchmark::State& state) {
    const auto mix = mixture_1296();
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_density(mix, 0.2, 0.25, 4, 1e-3, 100000, 3, 1).mean);
    state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_EstimateDensity)->Unit(benchmark::kMillisecond);

static void BM_SolveCkr(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const WeightedGraph g = random_graph(n, 3, 0.3, 11);
    for (auto _ : state) benchmark::DoNotOptimize(solve_ckr(g).lp_value);
}
BENCHMARK(BM_SolveCkr)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_Decompose(benchmark::State& state) {
    ProductMixture mix{{{0.5, {0.5, 0.25, 0.25}}, {0.5, {0.25, 0.25, 0.5}}}};
    const PairDistribution rho = mix.pair_matrix();
    for (auto _ : state) benchmark::DoNotOptimize(try_decompose(rho, static_cast<int>(state.range(0))).residual);
}
BENCHMARK(BM_Decompose)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
