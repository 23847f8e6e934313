// Parallel kernels against the serial reference. Run with --benchmark_filter
// to isolate one kernel; results are bitwise identical between the pairs, so
// only the timing differs.
#include <benchmark/benchmark.h>

#include "mixfourier/model.hpp"
#include "mixfourier/serial.hpp"

using namespace mixfourier;

namespace {

SampleSet bench_samples() {
    return sample_mixture(make_mixture({-0.5, 0.5}, {0.5, 0.5}, 1.0), 100000, 9001);
}

FourierData bench_data() {
    const auto m = make_mixture({0.3 * M_PI, M_PI, 1.6 * M_PI}, {1, 1, 1}, 0.9);
    return synth_fourier(m, FourierGrid(1.5, 5), 1e-5, 77);
}

void BM_ecf(benchmark::State& state) {
    const auto samples = bench_samples();
    const FourierGrid grid(1.6, 8);
    for (auto _ : state) benchmark::DoNotOptimize(ecf(samples, grid));
}

void BM_ecf_serial(benchmark::State& state) {
    const auto samples = bench_samples();
    const FourierGrid grid(1.6, 8);
    for (auto _ : state) benchmark::DoNotOptimize(ref::ecf(samples, grid));
}

void BM_svr_surface(benchmark::State& state) {
    const auto data = bench_data();
    const auto candidates = make_candidates(2.0, 0.01);
    for (auto _ : state) benchmark::DoNotOptimize(svr_surface(data, candidates));
}

void BM_svr_surface_serial(benchmark::State& state) {
    const auto data = bench_data();
    const auto candidates = make_candidates(2.0, 0.01);
    for (auto _ : state) benchmark::DoNotOptimize(ref::svr_surface(data, candidates));
}

void BM_music_spectrum(benchmark::State& state) {
    const auto data = bench_data();
    for (auto _ : state) benchmark::DoNotOptimize(music_spectrum(data, 0.45, 3));
}

void BM_music_spectrum_serial(benchmark::State& state) {
    const auto data = bench_data();
    for (auto _ : state) benchmark::DoNotOptimize(ref::music_spectrum(data, 0.45, 3));
}

BENCHMARK(BM_ecf)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ecf_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_svr_surface)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_svr_surface_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_music_spectrum)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_music_spectrum_serial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
