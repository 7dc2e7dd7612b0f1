#include "pairorbit/dynamics.hpp"
#include "pairorbit/initcond.hpp"

#include <benchmark/benchmark.h>

using namespace pairorbit;

namespace {

FullState planetary_ic(const PhysConfig& cfg) {
    const MotionConstants mc = scale_constants(1.6, 2.2, cfg);
    const auto br = velocity_branches(QPoint{0.5, 1.0}, mc, cfg);
    return build_full_state(0.0, 0.0, QPoint{0.5, 1.0}, br[0], cfg);
}

} // namespace

static void BM_rhs_full(benchmark::State& state) {
    const PhysConfig cfg = derive_config(1.0 / 3.0, 0.0, 1.0);
    const FullState s = planetary_ic(cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rhs_full(s, cfg));
    }
}
BENCHMARK(BM_rhs_full);

static void BM_integrate_full(benchmark::State& state) {
    const PhysConfig cfg = derive_config(1.0 / 3.0, 0.0, 1.0);
    const FullState ic = planetary_ic(cfg);
    IntegrationOptions opt;
    opt.tol = 1e-10;
    opt.samples = 100;
    const double horizon = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_full(ic, cfg, 0.0, horizon, opt));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_integrate_full)->Arg(1)->Arg(10)->Arg(60)->Complexity();

static void BM_velocity_branches(benchmark::State& state) {
    const PhysConfig cfg = derive_config(1.0 / 3.0, 0.0, 1.0);
    const MotionConstants mc = scale_constants(1.6, 2.2, cfg);
    const QPoint q{0.5, 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(velocity_branches(q, mc, cfg));
    }
}
BENCHMARK(BM_velocity_branches);
