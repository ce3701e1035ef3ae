// Microbenchmarks for the hot paths: soft-DTW forward/backward, the wavelet
// transform, and a full loss evaluation at reconstruction-harness sizes.
#include <benchmark/benchmark.h>

#include "ppgkit/losses.hpp"
#include "ppgkit/softdtw.hpp"
#include "ppgkit/spectral.hpp"
#include "ppgkit/synth.hpp"

using namespace ppgkit;

namespace {

SampledSignal bench_signal(std::size_t n, std::uint64_t seed, double fs = 50.0) {
    return {gaussian_vector(n, seed), fs};
}

void bm_softdtw_value(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const SampledSignal x = bench_signal(n, 1);
    const SampledSignal y = bench_signal(n, 2);
    SoftDtwWorkspace ws;
    for (auto _ : state) benchmark::DoNotOptimize(soft_dtw(x, y, {1.0}, &ws));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_softdtw_value)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void bm_softdtw_grad(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const SampledSignal x = bench_signal(n, 3);
    const SampledSignal y = bench_signal(n, 4);
    SoftDtwWorkspace ws;
    for (auto _ : state) benchmark::DoNotOptimize(soft_dtw_grad(x, y, {1.0}, &ws));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_softdtw_grad)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void bm_dwt_db4(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const SampledSignal x = bench_signal(n, 5, 32.0);
    for (auto _ : state) benchmark::DoNotOptimize(dwt_db4(x, 4));
}
BENCHMARK(bm_dwt_db4)->RangeMultiplier(2)->Range(256, 4096);

void bm_total_loss(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const SampledSignal x = bench_signal(n, 6);
    const SampledSignal y = bench_signal(n, 7);
    for (auto _ : state) benchmark::DoNotOptimize(total_loss(x, y, {}, {}, {}));
}
BENCHMARK(bm_total_loss)->Arg(256)->Arg(512);

} // namespace

BENCHMARK_MAIN();
