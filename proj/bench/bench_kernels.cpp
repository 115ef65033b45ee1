#include <benchmark/benchmark.h>

#include <omp.h>

#include "heightnorm/imageops.hpp"
#include "heightnorm/pipeline.hpp"
#include "heightnorm/simverify.hpp"

using namespace heightnorm;

namespace {

const Capture& sample() {
    static const Capture c = [] {
        CaptureScenario sc;
        sc.subject = {66.0, Gender::neutral};
        sc.distance = 60.0;
        return simulate_capture(sc);
    }();
    return c;
}

const AffineTransform2D kStretch = AffineTransform2D::scale_translate(0.62, 97.0, 80.0);

void set_threads(const benchmark::State& state) { omp_set_num_threads(static_cast<int>(state.range(0))); }

void BM_WarpImage(benchmark::State& state) {
    set_threads(state);
    for (auto _ : state) benchmark::DoNotOptimize(warp_image(sample().image, kStretch, {512, 512}));
}
void BM_WarpImageReference(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(reference::warp_image(sample().image, kStretch, {512, 512}));
}

void BM_WarpMask(benchmark::State& state) {
    set_threads(state);
    for (auto _ : state) benchmark::DoNotOptimize(warp_mask(sample().mask, kStretch, {512, 512}));
}
void BM_WarpMaskReference(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(reference::warp_mask(sample().mask, kStretch, {512, 512}));
}

void BM_Suppress(benchmark::State& state) {
    set_threads(state);
    for (auto _ : state) benchmark::DoNotOptimize(suppress_background(sample().image, sample().mask));
}
void BM_SuppressReference(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(reference::suppress_background(sample().image, sample().mask));
}

CaptureScenario render_scenario() {
    CaptureScenario sc;
    sc.subject = {70.0, Gender::neutral};
    sc.distance = 48.0;
    return sc;
}

void BM_Render(benchmark::State& state) {
    set_threads(state);
    const auto sc = render_scenario();
    for (auto _ : state) benchmark::DoNotOptimize(simulate_capture(sc));
}
void BM_RenderReference(benchmark::State& state) {
    const auto sc = render_scenario();
    for (auto _ : state) benchmark::DoNotOptimize(reference::simulate_capture(sc));
}

void BM_NormalizeView(benchmark::State& state) {
    set_threads(state);
    const Capture& c = sample();
    for (auto _ : state) {
        benchmark::DoNotOptimize(normalize_view(c.image, c.mask, c.landmarks, {66.0, Gender::neutral}, {}));
    }
}

void BM_InvarianceSuite(benchmark::State& state) {
    set_threads(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_invariance_suite({36, 48, 60, 72, 84, 96}, {58, 66, 78}, {0.0, 0.4}));
    }
}

}  // namespace

BENCHMARK(BM_WarpImage)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_WarpImageReference)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_WarpMask)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_WarpMaskReference)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Suppress)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SuppressReference)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Render)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_RenderReference)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_NormalizeView)->Arg(1)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_InvarianceSuite)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
