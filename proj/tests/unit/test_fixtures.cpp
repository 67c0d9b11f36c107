#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fracvar/errors.hpp"
#include "fracvar/fixtures.hpp"
#include "oracles.hpp"

using namespace fracvar;

namespace {

VectorPath random_path(const Grid& g, std::size_t n, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<SampledSignal> comps;
    for (std::size_t i = 0; i < n; ++i) {
        const double c0 = u(rng), c1 = u(rng), c2 = u(rng), w = 1.0 + 3.0 * std::abs(u(rng));
        comps.push_back(sample([=](double t) { return c0 + c1 * t + c2 * std::sin(w * t); }, g));
    }
    return VectorPath(std::move(comps));
}

double max_valid_diff(const SampledSignal& x, const SampledSignal& y)
{
    return oracle::max_diff(x, y);
}

} // namespace

TEST(Fixtures, SelfConsistencyAtRandomOrders)
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> order(0.05, 1.0);
    const Grid g = make_grid(0.0, 1.0, 128);
    for (int trial = 0; trial < 5; ++trial) {
        const double p = trial == 0 ? 1.0 : order(rng);
        for (const ExampleFixture& fx : {example1(FracOrder(p)), example2(FracOrder(p))}) {
            const VectorPath q = random_path(g, fx.lagrangian.dim(), rng);
            const FracProblem prob = fx.make_problem(q);
            const SampledSignal c = noether_quantity(prob, q, fx.generator);
            const SampledSignal e = fx.expected_quantity(prob, q);
            EXPECT_GT(c.valid_count(), g.size() - 3);
            EXPECT_LT(max_valid_diff(c, e), 1e-10 * (1.0 + max_abs(e))) << fx.id << ' ' << p;
        }
    }
}

TEST(Fixtures, MakeProblemSlots)
{
    const Grid g = make_grid(0.0, 1.0, 16);
    const FracProblem p1 = example1(FracOrder(0.3)).make_problem(g, {{0, 0, 0}, {0, 0, 0}});
    EXPECT_EQ(p1.alpha().value(), 0.3);
    EXPECT_EQ(p1.beta().value(), 1.0);
    const FracProblem p2 = example2(FracOrder(0.3)).make_problem(g, {{0, 0, 0, 0}, {0, 0, 0, 0}});
    EXPECT_EQ(p2.alpha().value(), 1.0);
    EXPECT_EQ(p2.beta().value(), 0.3);
}

TEST(Example1, FamilyClosure)
{
    const FracOrder alpha(0.5);
    const Grid g = make_grid(0.0, 1.0, 2048);
    for (const PowerProfile& profile : {PowerProfile::power(0.0, 1.0, 0.8), PowerProfile::sine(0.0, 1.0),
                                        PowerProfile::vanishing_power(0.0, 1.0, 1.5)}) {
        const VectorPath q = example1_extremal(alpha, profile, g);
        EXPECT_TRUE(oracle::same_bits(q[0], q[1]));
        const FracProblem prob = example1(alpha).make_problem(g, {{q[0][0], q[0][0], 0.0}, {q[0][2048], q[0][2048], 0.0}});
        const ExampleFixture fx = example1(alpha);
        const SampledSignal c = noether_quantity(prob, q, fx.generator);
        EXPECT_LT(max_abs(c, Window::trimmed(g, 0.1)), 5e-2);
    }
}

TEST(Example1, ThirdComponentIsDerivativeDifference)
{
    const FracOrder alpha(0.5);
    const Grid g = make_grid(0.0, 1.0, 64);
    const PowerProfile f = PowerProfile::power(0.0, 1.0, 2.0);
    const VectorPath q = example1_extremal(alpha, f, g);
    for (std::size_t k = 1; k < g.intervals(); ++k) {
        const double t = g.node(k);
        const double x = 1.0 - t;
        const double right = std::pow(x, -0.5) / std::tgamma(0.5) - 2.0 * std::pow(x, 0.5) / std::tgamma(1.5) +
                             2.0 * std::pow(x, 1.5) / std::tgamma(2.5);
        const double left = oracle::power_derivative(0.5, 2.0, 0.0, t);
        EXPECT_NEAR(q[2][k], right - left, 1e-10 * (1.0 + std::abs(right)));
    }
    EXPECT_FALSE(q[2].valid(g.intervals()));
}

TEST(Example1, PrintedSignConvention)
{
    std::mt19937_64 rng(9);
    const Grid g = make_grid(0.0, 1.0, 64);
    const ExampleFixture fx = example1(FracOrder(0.4));
    const VectorPath q = random_path(g, 3, rng);
    const FracProblem prob = fx.make_problem(q);
    const SampledSignal printed = example1_printed_quantity(prob, q);
    const SampledSignal c = noether_quantity(prob, q, fx.generator);
    EXPECT_LT(oracle::max_diff(printed, -c), 1e-12 * (1.0 + max_abs(c)));
    EXPECT_GT(max_abs(c), 1e-2);
}

TEST(Example1, ClassicalLimit)
{
    std::mt19937_64 rng(31);
    const Grid g = make_grid(0.0, 1.0, 64);
    const ExampleFixture fx = example1(FracOrder(1.0));
    for (int trial = 0; trial < 5; ++trial) {
        const VectorPath q = random_path(g, 3, rng);
        const SampledSignal c = noether_quantity(fx.make_problem(q), q, fx.generator);
        const SampledSignal expected = (q[0] - q[1]) * q[2] * sample([](double t) { return t; }, g);
        EXPECT_LT(oracle::max_diff(c, expected), 1e-8);
    }
}

TEST(Example2, ClassicalLimit)
{
    std::mt19937_64 rng(32);
    const Grid g = make_grid(0.0, 1.0, 64);
    const ExampleFixture fx = example2(FracOrder(1.0));
    for (int trial = 0; trial < 5; ++trial) {
        const VectorPath q = random_path(g, 4, rng);
        const SampledSignal c = noether_quantity(fx.make_problem(q), q, fx.generator);
        const SampledSignal t = sample([](double x) { return x; }, g);
        const SampledSignal expected =
            q[0] * q[1] + (1.0 / 3.0) * (q[2] * q[3]) + (1.0 / 3.0) * ((q[3] * q[3] - 2.0 * (q[1] * q[2])) * t);
        EXPECT_LT(oracle::max_diff(c, expected), 1e-8);
        EXPECT_LT(oracle::max_diff(example2_classical_quantity(q), expected), 1e-12);
    }
}

TEST(Example2, KernelSeed)
{
    const FracOrder beta(0.5);
    const Grid g = make_grid(0.0, 1.0, 2048);
    const SampledSignal k = left_kernel(beta, g);
    const SampledSignal d = apply(build_operator(beta, Side::Left, Scheme::GL, g), k);
    EXPECT_LT(max_abs(d, Window::trimmed(g, 0.1)), 5e-2);
    EXPECT_LT(oracle::max_rel_error(k, [](double t) { return std::pow(t, -0.5); }, 0.1, 0.9), 5e-2);
}

TEST(Example2, DiscreteExtremal)
{
    for (double b : {0.5, 0.8, 1.0}) {
        const FracOrder beta(b);
        const Grid g = make_grid(0.0, 1.0, 256);
        const SampledSignal seed = PowerProfile::sine(0.0, 1.0).sample(g);
        const VectorPath q = example2_extremal(beta, seed);
        ASSERT_EQ(q.dim(), 4u);
        const FracProblem prob = example2(beta).make_problem(q);
        const VectorPath r = el_residual(prob, q);
        double scale = 0.0;
        for (const auto& c : q.components())
            scale = std::max(scale, max_abs(c));
        for (const auto& c : r.components())
            EXPECT_LT(max_abs_interior(c, Window::whole(g)), 1e-9 * (1.0 + scale) * g.intervals()) << b;
    }
}

TEST(Example2, ClassicalConservation)
{
    const Grid g = make_grid(0.0, 1.0, 1024);
    const ExampleFixture fx = example2(FracOrder(1.0));
    const VectorPath q = example2_extremal(FracOrder(1.0), PowerProfile::sine(0.0, 1.0).sample(g));
    const double defect = classical_conservation_defect(example2_classical_quantity(q));
    EXPECT_LT(defect, 1e-2);
    const Generator wrong = builtin_generator("example2", 4, 1.0, -1.0, 1.0);
    const double control = classical_conservation_defect(classical_noether_quantity(fx.lagrangian, q, wrong));
    EXPECT_GT(control, 10.0 * defect);
}

TEST(EulerEnergy, FreeParticleAndHarmonic)
{
    const Grid g = make_grid(0.0, 1.0, 1024);
    const VectorPath line({sample([](double t) { return t; }, g)});
    const SampledSignal e0 = euler_energy(builtin_lagrangian("free_particle"), line);
    for (std::size_t k = 0; k < g.size(); ++k)
        EXPECT_NEAR(e0[k], 0.5, 1e-12);
    const VectorPath s({sample([](double t) { return std::sin(t); }, g)});
    const SampledSignal e1 = euler_energy(builtin_lagrangian("harmonic"), s);
    for (std::size_t k = 0; k < g.size(); ++k)
        EXPECT_NEAR(e1[k], 0.5, 1e-3);
}

TEST(EulerEnergy, NonExtremalControl)
{
    const Grid g = make_grid(0.0, 1.0, 1024);
    const VectorPath q({sample([](double t) { return t * t; }, g)});
    EXPECT_GT(classical_conservation_defect(euler_energy(builtin_lagrangian("free_particle"), q)), 0.5);
}

TEST(Catalog, Generators)
{
    const Generator tr = builtin_generator("time_translation", 2, 2.0);
    EXPECT_TRUE(tr.has_time_change());
    const std::vector<double> q{1.0, 2.0};
    EXPECT_EQ(tr.tau({0, 0.3}, q), 2.0);
    const Generator ex1 = builtin_generator("example1", 3);
    const std::vector<double> q3{1.0, 2.0, 5.0};
    EXPECT_EQ(ex1.tau({0, 0.5}, q3), -0.5);
    EXPECT_EQ(ex1.xi({0, 0.5}, q3), (std::vector<double>{0.0, 0.0, 5.0}));
    const Generator ex2 = builtin_generator("example2", 4);
    const std::vector<double> q4{1.0, 2.0, 3.0, 6.0};
    EXPECT_DOUBLE_EQ(ex2.tau({0, 0.75}, q4), 0.5);
    EXPECT_EQ(ex2.xi({0, 0.75}, q4), (std::vector<double>{1.0, -2.0, 1.0, -2.0}));
    EXPECT_THROW(builtin_generator("rotation", 2), DomainError);
    EXPECT_THROW(builtin_generator("example1", 2), DomainError);
}
