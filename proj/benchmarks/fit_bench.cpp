#include <benchmark/benchmark.h>

#include <vector>

#include "flatcurve/epidemic.hpp"
#include "flatcurve/gamma_fit.hpp"
#include "flatcurve/rng.hpp"

using namespace flatcurve;

static void BM_Digamma(benchmark::State& state) {
    double x = 0.001;
    for (auto _ : state) {
        benchmark::DoNotOptimize(digamma(x));
        x = x < 1e6 ? x * 1.001 : 0.001;
    }
}
BENCHMARK(BM_Digamma);

static void BM_FitGammaWeighted(benchmark::State& state) {
    // histogram-shaped input: a handful of integer distances, large weights
    std::vector<double> values, weights;
    for (int d = 1; d <= 12; ++d) {
        values.push_back(d);
        weights.push_back(1000.0 + 300.0 * d * (12 - d));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_gamma_weighted(values, weights));
    }
}
BENCHMARK(BM_FitGammaWeighted);

static void BM_FitGammaRawSamples(benchmark::State& state) {
    SplitMix64 rng(9);
    std::vector<double> samples;
    const auto count = static_cast<std::size_t>(state.range(0));
    samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        samples.push_back(1.0 + rng.uniform_index(40) + rng.uniform01());
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_gamma(samples));
    }
    state.SetItemsProcessed(state.iterations() * count);
}
BENCHMARK(BM_FitGammaRawSamples)->Arg(10000)->Arg(100000);

static void BM_RunTrial(benchmark::State& state) {
    const NodeId n = static_cast<NodeId>(state.range(0));
    const IsolationPolicy policy{Measure::Closeness, 0.15};
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_trial(n, 6, 0.05, policy, seed++));
    }
}
BENCHMARK(BM_RunTrial)->Arg(100)->Arg(500);

BENCHMARK_MAIN();
