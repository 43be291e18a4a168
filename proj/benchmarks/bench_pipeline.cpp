#include <benchmark/benchmark.h>

#include "tablegrid/pipeline.hpp"
#include "tablegrid/synth.hpp"

using namespace tablegrid;

namespace {

const synth::Rendering& fixture_page() {
    static const synth::Rendering page = [] {
        const auto fx = synth::two_table_fixture();
        return synth::render(fx.tables, fx.page_w, fx.page_h, fx.options);
    }();
    return page;
}

void BM_AdaptiveGaussian(benchmark::State& state) {
    const auto& img = fixture_page().image;
    const AdaptiveParams params{static_cast<int>(state.range(0)), 40};
    for (auto _ : state) {
        benchmark::DoNotOptimize(adaptive_gaussian(img, params, Polarity::DarkForeground));
    }
    state.SetItemsProcessed(state.iterations() * img.width() * img.height());
}
BENCHMARK(BM_AdaptiveGaussian)->Arg(11)->Arg(199)->Unit(benchmark::kMillisecond);

void BM_Otsu(benchmark::State& state) {
    const auto hist = histogram(fixture_page().image);
    for (auto _ : state) benchmark::DoNotOptimize(otsu_threshold(hist));
}
BENCHMARK(BM_Otsu);

void BM_Open(benchmark::State& state) {
    const auto binary = binarize(fixture_page().image, PipelineConfig{});
    const auto kernel = make_kernel(state.range(0) == 0 ? KernelKind::Vertical : KernelKind::Horizontal,
                                    binary.height(), 80);
    for (auto _ : state) benchmark::DoNotOptimize(open(binary, kernel, 3));
}
BENCHMARK(BM_Open)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_OpenGenericKernel(benchmark::State& state) {
    const auto binary = binarize(fixture_page().image, PipelineConfig{});
    const StructuringElement cross(3, 3, {0, 1, 0, 1, 1, 1, 0, 1, 0}, 1, 1);
    for (auto _ : state) benchmark::DoNotOptimize(open(binary, cross, 1));
}
BENCHMARK(BM_OpenGenericKernel)->Unit(benchmark::kMillisecond);

void BM_FindContours(benchmark::State& state) {
    const auto& mask = fixture_page().truth.line_mask;
    for (auto _ : state) benchmark::DoNotOptimize(find_contours(mask));
}
BENCHMARK(BM_FindContours)->Unit(benchmark::kMillisecond);

void BM_FullPipeline(benchmark::State& state) {
    const auto& page = fixture_page();
    std::vector<OcrWord> words;
    for (const auto& t : page.truth.tables) words.insert(words.end(), t.words.begin(), t.words.end());
    const PipelineConfig cfg;
    for (auto _ : state) {
        const auto d = detect_tables(page.image, cfg);
        benchmark::DoNotOptimize(map_tables(d.grouping, words, cfg));
    }
}
BENCHMARK(BM_FullPipeline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
