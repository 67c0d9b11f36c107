#include <benchmark/benchmark.h>

#include <cmath>

#include "fracvar/fixtures.hpp"
#include "fracvar/noether.hpp"

using namespace fracvar;

static void BM_DGamma(benchmark::State& state)
{
    const Grid g = make_grid(0.0, 1.0, state.range(0));
    const SampledSignal f = sample([](double t) { return std::exp(t); }, g);
    const SampledSignal h = sample([](double t) { return std::cos(2.0 * t); }, g);
    for (auto _ : state)
        benchmark::DoNotOptimize(d_gamma(f, h, FracOrder(0.5)));
}
BENCHMARK(BM_DGamma)->Arg(512)->Arg(2048);

static void BM_VerifyExample1(benchmark::State& state)
{
    const FracOrder alpha(0.5);
    const Grid g = make_grid(0.0, 1.0, state.range(0));
    const ExampleFixture fx = example1(alpha);
    const VectorPath q = example1_extremal(alpha, PowerProfile::vanishing_power(0.0, 1.0, 0.8), g);
    const FracProblem prob = fx.make_problem(q);
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_noether(prob, q, fx.generator));
}
BENCHMARK(BM_VerifyExample1)->Arg(512)->Arg(2048);
