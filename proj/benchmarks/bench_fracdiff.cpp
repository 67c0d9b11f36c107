#include <benchmark/benchmark.h>

#include <cmath>

#include "fracvar/fracdiff.hpp"

using namespace fracvar;

static void BM_BuildOperator(benchmark::State& state)
{
    const Grid g = make_grid(0.0, 1.0, state.range(0));
    const Scheme scheme = state.range(1) == 0 ? Scheme::GL : Scheme::L1;
    for (auto _ : state)
        benchmark::DoNotOptimize(build_operator(FracOrder(0.5), Side::Left, scheme, g));
}
BENCHMARK(BM_BuildOperator)->ArgsProduct({{256, 1024, 4096}, {0, 1}});

static void BM_ApplyOperator(benchmark::State& state)
{
    const Grid g = make_grid(0.0, 1.0, state.range(0));
    const Scheme scheme = state.range(1) == 0 ? Scheme::GL : Scheme::L1;
    const FracOperator op = build_operator(FracOrder(0.5), Side::Right, scheme, g);
    const SampledSignal s = sample([](double t) { return std::sin(3.0 * t) * (1.0 - t); }, g);
    for (auto _ : state)
        benchmark::DoNotOptimize(op.apply(s));
}
BENCHMARK(BM_ApplyOperator)->ArgsProduct({{256, 1024, 4096}, {0, 1}});

static void BM_GlWeights(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(gl_weights(FracOrder(0.3), static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_GlWeights)->Arg(4096)->Arg(65536);
