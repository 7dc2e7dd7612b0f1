#include "pairorbit/quartic.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace pairorbit;

namespace {

std::vector<QuarticParams> random_params(size_t n) {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    std::vector<QuarticParams> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i)
        out.push_back(QuarticParams::from_scaled(std::fabs(d(rng)) + 0.01, d(rng), d(rng)));
    return out;
}

} // namespace

static void BM_p4_roots(benchmark::State& state) {
    const auto params = random_params(1024);
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(p4_roots(params[i++ & 1023]));
    }
}
BENCHMARK(BM_p4_roots);

static void BM_discriminant(benchmark::State& state) {
    const auto params = random_params(1024);
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(discriminant(params[i++ & 1023]));
    }
}
BENCHMARK(BM_discriminant);
