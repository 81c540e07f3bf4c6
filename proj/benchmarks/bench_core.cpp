#include <benchmark/benchmark.h>

#include <cstddef>
#include <random>
#include <vector>

#include "wn/dyadic.hpp"
#include "wn/experiments.hpp"
#include "wn/kernels.hpp"
#include "wn/means.hpp"
#include "wn/metrics.hpp"
#include "wn/transform.hpp"
#include "wn/weights.hpp"

namespace {

wn::StepFunction random_function(int bits, std::uint64_t seed) {
    wn::Resolution M(bits);
    wn::StepFunction f(M);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    for (double& v : f.values) v = value(rng);
    return f;
}

void bm_fwht(benchmark::State& state) {
    const int bits = static_cast<int>(state.range(0));
    std::vector<double> data = random_function(bits, 11).values;
    for (auto _ : state) {
        std::vector<double> work = data;
        wn::fwht_in_place(work);
        benchmark::DoNotOptimize(work.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_fwht)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

void bm_analyze_synthesize(benchmark::State& state) {
    wn::StepFunction f = random_function(static_cast<int>(state.range(0)), 12);
    for (auto _ : state) {
        wn::StepFunction back = wn::synthesize(wn::analyze(f));
        benchmark::DoNotOptimize(back.values.data());
    }
}
BENCHMARK(bm_analyze_synthesize)->Arg(10)->Arg(14)->Arg(18);

void bm_convolve(benchmark::State& state) {
    const int bits = static_cast<int>(state.range(0));
    wn::StepFunction f = random_function(bits, 13);
    wn::StepFunction g = wn::fejer_kernel(100, f.resolution);
    for (auto _ : state) {
        wn::StepFunction h = wn::convolve(f, g);
        benchmark::DoNotOptimize(h.values.data());
    }
}
BENCHMARK(bm_convolve)->Arg(10)->Arg(14);

void bm_kernel_spectral(benchmark::State& state) {
    wn::Resolution M(12);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    wn::WeightSequence q = wn::WeightSequence::poly(1.0);
    for (auto _ : state) {
        wn::StepFunction k = wn::norlund_kernel(q, n, M);
        benchmark::DoNotOptimize(k.values.data());
    }
}
BENCHMARK(bm_kernel_spectral)->Arg(37)->Arg(1000)->Arg(4096);

void bm_kernel_cumulative(benchmark::State& state) {
    wn::Resolution M(12);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    wn::WeightSequence q = wn::WeightSequence::poly(1.0);
    for (auto _ : state) {
        wn::StepFunction k = wn::norlund_kernel(q, n, M, wn::KernelPath::cumulative);
        benchmark::DoNotOptimize(k.values.data());
    }
}
BENCHMARK(bm_kernel_cumulative)->Arg(37)->Arg(1000);

void bm_norlund_mean_spectral(benchmark::State& state) {
    wn::StepFunction f = random_function(12, 14);
    wn::Spectrum s = wn::analyze(f);
    wn::WeightSequence q = wn::WeightSequence::poly(1.0);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        wn::StepFunction t = wn::norlund_mean_spectral(s, n, q);
        benchmark::DoNotOptimize(t.values.data());
    }
}
BENCHMARK(bm_norlund_mean_spectral)->Arg(100)->Arg(2048);

void bm_norlund_mean_partial_sum(benchmark::State& state) {
    wn::StepFunction f = random_function(10, 15);
    wn::WeightSequence q = wn::WeightSequence::poly(1.0);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        wn::MeanResult r = wn::norlund_mean(f, n, q, wn::MeanMethod::partial_sum);
        benchmark::DoNotOptimize(r.values.values.data());
    }
}
BENCHMARK(bm_norlund_mean_partial_sum)->Arg(100)->Arg(1024);

void bm_modulus_profile(benchmark::State& state) {
    wn::StepFunction f = wn::lip_generator(0.5, wn::Resolution(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        wn::ModulusProfile profile = wn::modulus_profile(f, 2.0);
        benchmark::DoNotOptimize(profile.values.data());
    }
}
BENCHMARK(bm_modulus_profile)->Arg(8)->Arg(10)->Arg(12);

void bm_sweep_cell(benchmark::State& state) {
    wn::Resolution M(12);
    wn::FunctionProfile fp = wn::make_profile("lip:0.5", wn::lip_generator(0.5, M), 2.0);
    wn::WeightSequence q = wn::WeightSequence::poly(1.0);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        wn::BoundReport r = wn::verify_theorem1(fp, n, q);
        benchmark::DoNotOptimize(&r);
    }
}
BENCHMARK(bm_sweep_cell)->Arg(100)->Arg(2048);

}  // namespace

BENCHMARK_MAIN();
