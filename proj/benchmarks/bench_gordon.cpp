#include <benchmark/benchmark.h>

#include "gordon/backlund.hpp"
#include "gordon/families.hpp"
#include "gordon/harmonic.hpp"
#include "gordon/profiles.hpp"

using namespace gordon;

namespace {

Grid2D sqrt2_grid(int per_unit) {
    const auto r = recommended_rect(FamilyId::W_SQRT2);
    return grid_with_spacing(r.x0, r.x1, r.y0, r.y1, 1.0 / per_unit);
}

void BM_SinhGordonResidual(benchmark::State& state) {
    const auto w = eval_scalar(FamilyId::W_SQRT2, sqrt2_grid(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sup_norm(residual_sinh_gordon(w)));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(w.grid.size()));
}
BENCHMARK(BM_SinhGordonResidual)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_ThetaToWAnalytic(benchmark::State& state) {
    const auto g = sqrt2_grid(static_cast<int>(state.range(0)));
    const auto src = FieldSource::analytic(scalar_formula(FamilyId::THETA_SQRT2));
    for (auto _ : state) {
        benchmark::DoNotOptimize(theta_to_w(src, g, 0.0));
    }
}
BENCHMARK(BM_ThetaToWAnalytic)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_ThetaToWSampled(benchmark::State& state) {
    const auto theta = eval_scalar(FamilyId::THETA_SQRT2, sqrt2_grid(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(theta_to_w(theta, 0.0));
    }
}
BENCHMARK(BM_ThetaToWSampled)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_PpfdConstruct(benchmark::State& state) {
    const auto g = sqrt2_grid(static_cast<int>(state.range(0)));
    const auto pair = make_backlund_pair(eval_scalar(FamilyId::W_SQRT2, g), eval_scalar(FamilyId::THETA_SQRT2, g));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ppfd_construct(pair, 0.0, 0.5));
    }
}
BENCHMARK(BM_PpfdConstruct)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_PullbackCurvature(benchmark::State& state) {
    const auto u = eval_map(FamilyId::U_SQRT2, sqrt2_grid(static_cast<int>(state.range(0))));
    const CurvatureGuard guard{1e-10, 0.01, DifferenceOrder::fourth};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gaussian_curvature(pullback_metric(u, DifferenceOrder::fourth), guard));
    }
}
BENCHMARK(BM_PullbackCurvature)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_IntegrateProfile(benchmark::State& state) {
    const QuarticProfile spec{-1, 4, 0, 2, 0, Axis::x};
    const int n = static_cast<int>(state.range(0));
    const AxisSamples axis{-1.0, 2.0 / n, n + 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_profile(spec, axis));
    }
}
BENCHMARK(BM_IntegrateProfile)->Arg(800)->Arg(3200)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
