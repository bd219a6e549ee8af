#include <benchmark/benchmark.h>

#include <numbers>

#include "coral/crochet.hpp"
#include "coral/diffgeo.hpp"
#include "coral/mesh.hpp"
#include "coral/oracle.hpp"

using namespace coral;

static void BM_CurvatureReport(benchmark::State& state) {
    const SurfaceFamily s = SurfaceFamily::coral(4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(curvature_report(s, {1.25, 0.7}));
    }
}
BENCHMARK(BM_CurvatureReport);

static void BM_FdJet(benchmark::State& state) {
    const SurfaceFamily s = SurfaceFamily::coral(4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fd_jet(s, {1.25, 0.7}, {1e-5}));
    }
}
BENCHMARK(BM_FdJet);

static void BM_Tessellate(benchmark::State& state) {
    const SurfaceFamily s = SurfaceFamily::coral(4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tessellate(s, {0.0, 2.0}, {0.0, 2 * std::numbers::pi}, 64, 256, true));
    }
}
BENCHMARK(BM_Tessellate)->Unit(benchmark::kMillisecond);

static void BM_RenderPattern(benchmark::State& state) {
    const RowPlan plan = plan_rows(14, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(render_pattern(plan, PatternMode::Block));
    }
}
BENCHMARK(BM_RenderPattern)->Arg(4)->Arg(8);

static void BM_ValidateAll(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(validate_all());
    }
}
BENCHMARK(BM_ValidateAll)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
