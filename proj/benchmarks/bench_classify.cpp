#include "pairorbit/classify.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace pairorbit;

static void BM_classify_point(benchmark::State& state) {
    const PhysConfig cfg = derive_config(1.0 / 3.0, 0.0, 1.0);
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> d(-3.0, 4.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify_point(constants_from_scaled(d(rng), d(rng), cfg), cfg));
    }
}
BENCHMARK(BM_classify_point);

static void BM_scan_diagram(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            scan_diagram(1.0 / 3.0, GridSpec{-2.0, 3.0, n}, GridSpec{-2.0, 4.0, n}, 1));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_scan_diagram)->RangeMultiplier(2)->Range(16, 128)->Complexity();

static void BM_scan_diagram_threads(benchmark::State& state) {
    const unsigned t = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            scan_diagram(1.0 / 3.0, GridSpec{-2.0, 3.0, 96}, GridSpec{-2.0, 4.0, 96}, t));
    }
}
BENCHMARK(BM_scan_diagram_threads)->Arg(1)->Arg(2)->Arg(4);
