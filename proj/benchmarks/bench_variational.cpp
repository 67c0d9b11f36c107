#include <benchmark/benchmark.h>

#include <cmath>

#include "fracvar/fixtures.hpp"
#include "fracvar/solver.hpp"

using namespace fracvar;

static void BM_ElResidualExample1(benchmark::State& state)
{
    const FracOrder alpha(0.5);
    const Grid g = make_grid(0.0, 1.0, state.range(0));
    const VectorPath q = example1_extremal(alpha, PowerProfile::vanishing_power(0.0, 1.0, 0.8), g);
    const FracProblem prob = example1(alpha).make_problem(q);
    for (auto _ : state)
        benchmark::DoNotOptimize(el_residual(prob, q));
}
BENCHMARK(BM_ElResidualExample1)->Arg(256)->Arg(1024)->Arg(2048);

static void BM_Functional(benchmark::State& state)
{
    const Grid g = make_grid(0.0, 1.0, state.range(0));
    const ExampleFixture fx = example2(FracOrder(0.6));
    const VectorPath q = example2_extremal(FracOrder(0.6), PowerProfile::sine(0.0, 1.0).sample(g));
    const FracProblem prob = fx.make_problem(q);
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_functional(prob, q));
}
BENCHMARK(BM_Functional)->Arg(256)->Arg(1024);

static void BM_SolveHarmonic(benchmark::State& state)
{
    const Grid g = make_grid(0.0, 1.0, state.range(0));
    const FracProblem prob(builtin_lagrangian("harmonic"), FracOrder(1.0), FracOrder(1.0), g, {{0.0}, {std::sin(1.0)}});
    const VectorPath q0({sample([](double t) { return t * std::sin(1.0); }, g)});
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_extremal(prob, q0));
}
BENCHMARK(BM_SolveHarmonic)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
