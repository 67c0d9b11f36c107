#include <gtest/gtest.h>

#include <cmath>

#include "fracvar/errors.hpp"
#include "fracvar/fixtures.hpp"
#include "fracvar/problem.hpp"
#include "oracles.hpp"

using namespace fracvar;
using CSpan = std::span<const double>;
using fracvar::oracle::kPi;

namespace {

Lagrangian constant_lagrangian()
{
    return Lagrangian(1, [](double, CSpan, CSpan, CSpan) { return 1.0; });
}

VectorPath scalar_path(const Grid& g, const std::function<double(double)>& f)
{
    return VectorPath({sample(f, g)});
}

double max_interior(const VectorPath& r)
{
    double m = 0.0;
    for (const auto& c : r.components())
        m = std::max(m, max_abs_interior(c, Window::whole(c.grid())));
    return m;
}

} // namespace

TEST(FracProblem, RejectsNonVariationalOrders)
{
    const Grid g = make_grid(0.0, 1.0, 8);
    for (double bad : {0.0, -0.5, 1.5})
        EXPECT_THROW(FracProblem(constant_lagrangian(), FracOrder(bad), FracOrder(0.5), g, {{0.0}, {0.0}}),
                     DomainError);
    EXPECT_THROW(FracProblem(constant_lagrangian(), FracOrder(0.5), FracOrder(0.5), g, {{0.0, 1.0}, {0.0}}),
                 DomainError);
}

TEST(FracProblem, OperatorSidesAndOrders)
{
    const Grid g = make_grid(0.0, 1.0, 8);
    const FracProblem prob(constant_lagrangian(), FracOrder(0.3), FracOrder(0.7), g, {{0.0}, {0.0}});
    EXPECT_EQ(prob.left_alpha().side(), Side::Left);
    EXPECT_EQ(prob.left_alpha().order().value(), 0.3);
    EXPECT_EQ(prob.right_beta().side(), Side::Right);
    EXPECT_EQ(prob.right_beta().order().value(), 0.7);
    EXPECT_EQ(prob.right_alpha().side(), Side::Right);
    EXPECT_EQ(prob.right_alpha().order().value(), 0.3);
    EXPECT_EQ(prob.left_beta().side(), Side::Left);
    EXPECT_EQ(prob.left_beta().order().value(), 0.7);
}

TEST(EvaluateFunctional, FreeParticle)
{
    const Grid g = make_grid(0.0, 1.0, 1000);
    const FracProblem prob(builtin_lagrangian("free_particle"), FracOrder(1.0), FracOrder(1.0), g, {{0.0}, {1.0}});
    // The first difference has no value at t = a, so the first panel is dropped.
    EXPECT_NEAR(evaluate_functional(prob, scalar_path(g, [](double t) { return t; })), 0.5 * (1.0 - g.step()),
                1e-12);
}

TEST(EvaluateFunctional, ConstantLagrangian)
{
    const Grid g = make_grid(-1.0, 2.0, 64);
    const FracProblem prob(constant_lagrangian(), FracOrder(0.5), FracOrder(0.5), g, {{0.0}, {0.0}});
    const VectorPath q = scalar_path(g, [](double t) { return (t + 1.0) * (2.0 - t) * std::exp(t); });
    EXPECT_NEAR(evaluate_functional(prob, q), 3.0, 1e-13);
}

TEST(EvaluateFunctional, Example1VanishesWhenQ1EqualsQ2)
{
    const Grid g = make_grid(0.0, 1.0, 256);
    const ExampleFixture fx = example1(FracOrder(0.5));
    const SampledSignal q1 = sample([](double t) { return t * t * (1.0 - t); }, g);
    const SampledSignal q3 = sample([](double t) { return std::cos(5.0 * t); }, g);
    const VectorPath q({q1, q1, q3});
    EXPECT_EQ(evaluate_functional(fx.make_problem(q), q), 0.0);
}

TEST(EvaluateFunctional, Errors)
{
    const Grid g = make_grid(0.0, 1.0, 16);
    const FracProblem prob(builtin_lagrangian("free_particle"), FracOrder(1.0), FracOrder(1.0), g, {{0.0}, {1.0}});
    EXPECT_THROW(evaluate_functional(prob, scalar_path(g, [](double t) { return 2.0 * t; })), DomainError);
    const Grid other = make_grid(0.0, 1.0, 17);
    EXPECT_THROW(evaluate_functional(prob, scalar_path(other, [](double t) { return t; })), DomainError);
    EXPECT_THROW(el_residual(prob, scalar_path(other, [](double t) { return t; })), DomainError);
}

TEST(ElResidual, FreeParticleLine)
{
    const Grid g = make_grid(0.0, 1.0, 200);
    const FracProblem prob(builtin_lagrangian("free_particle"), FracOrder(1.0), FracOrder(1.0), g, {{0.0}, {1.0}});
    const VectorPath r = el_residual(prob, scalar_path(g, [](double t) { return t; }));
    EXPECT_FALSE(r[0].valid(0));
    EXPECT_FALSE(r[0].valid(g.intervals()));
    EXPECT_LT(max_interior(r), 1e-10);
}

TEST(ElResidual, ConstantLagrangianIsZero)
{
    const Grid g = make_grid(0.0, 1.0, 64);
    const FracProblem prob(constant_lagrangian(), FracOrder(0.4), FracOrder(0.6), g, {{0.0}, {0.0}});
    const VectorPath r = el_residual(prob, scalar_path(g, [](double t) { return std::sin(kPi * t); }));
    for (std::size_t k = 1; k < g.intervals(); ++k)
        EXPECT_EQ(r[0][k], 0.0);
}

TEST(ElResidual, ClassicalConsistency)
{
    // L = (1 + q^2) v^2 / 2 + t q gives q_tt (1 + q^2) = t - q v^2.
    auto eval = [](double t, CSpan q, CSpan dl, CSpan) {
        return 0.5 * (1.0 + q[0] * q[0]) * dl[0] * dl[0] + t * q[0];
    };
    LagrangianOptions opts;
    opts.uses_right = false;
    const Grid g = make_grid(0.0, 1.0, 1024);
    auto q = [](double t) { return std::sin(2.0 * t) + t; };
    auto v = [](double t) { return 2.0 * std::cos(2.0 * t) + 1.0; };
    auto acc = [](double t) { return -4.0 * std::sin(2.0 * t); };
    const FracProblem prob(Lagrangian(1, eval, opts), FracOrder(1.0), FracOrder(1.0), g, {{q(0.0)}, {q(1.0)}});
    const VectorPath r = el_residual(prob, scalar_path(g, q));
    auto classical = [&](double t) { return t - q(t) * v(t) * v(t) - (1.0 + q(t) * q(t)) * acc(t); };
    EXPECT_LT(oracle::max_abs_error(r[0], classical, 0.0, 1.0), 5e-2);
}

TEST(ElResidual, Example1FamilyConverges)
{
    const FracOrder alpha(0.5);
    double prev = INFINITY;
    for (std::int64_t n : {256, 512, 1024, 2048}) {
        const Grid g = make_grid(0.0, 1.0, n);
        const VectorPath q = example1_extremal(alpha, PowerProfile::power(0.0, 1.0, 0.8), g);
        const FracProblem prob = example1(alpha).make_problem(g, {{0.0, 0.0, 0.0}, {1.0, 1.0, 0.0}});
        const VectorPath r = el_residual(prob, q);
        double m = 0.0;
        for (const auto& c : r.components())
            m = std::max(m, max_abs_interior(c, Window::trimmed(g, 0.1)));
        EXPECT_LT(m, prev);
        prev = m;
    }
    EXPECT_LT(prev, 5e-2);
}

TEST(ElResidual, InteriorOnlyAndUnusedSlotIgnored)
{
    const Grid g = make_grid(0.0, 1.0, 64);
    const ExampleFixture fx = example1(FracOrder(0.5));
    const VectorPath q = example1_extremal(FracOrder(0.5), PowerProfile::vanishing_power(0.0, 1.0, 0.8), g);
    const VectorPath r = el_residual(fx.make_problem(q), q);
    for (const auto& c : r.components()) {
        EXPECT_FALSE(c.valid(0));
        EXPECT_FALSE(c.valid(g.intervals()));
        for (std::size_t k = 1; k < g.intervals(); ++k)
            EXPECT_TRUE(c.valid(k));
    }
}

TEST(PartialSignals, MasksFollowFiniteness)
{
    const Grid g = make_grid(0.0, 1.0, 32);
    const ExampleFixture fx = example1(FracOrder(0.5));
    const VectorPath q = example1_extremal(FracOrder(0.5), PowerProfile::power(0.0, 1.0, 0.8), g);
    const FracProblem prob = fx.make_problem(g, {{0.0, 0.0, 0.0}, {1.0, 1.0, 0.0}});
    const PartialSignals ps = partial_signals(prob, q);
    EXPECT_FALSE(ps.lagrangian.valid(g.intervals()));
    EXPECT_TRUE(ps.dl[0].valid(g.intervals()));
    EXPECT_EQ(ps.dr[0][5], 0.0);
}

TEST(FunctionalGradient, DiscreteFundamentalLemma)
{
    auto eval = [](double t, CSpan q, CSpan dl, CSpan dr) {
        return 0.5 * dl[0] * dl[0] + 0.3 * dr[0] * dr[0] + q[0] * q[0] * dl[0] + t * std::sin(q[0]);
    };
    const Grid g = make_grid(0.0, 1.0, 512);
    const FracProblem prob(Lagrangian(1, eval), FracOrder(0.5), FracOrder(0.5), g, {{0.0}, {0.0}});
    const SampledSignal q = sample([](double t) { return std::sin(kPi * t) * (1.0 + t); }, g);
    const SampledSignal v = sample(
        [](double t) {
            const double s = (t - 0.5) / 0.3;
            return std::abs(s) < 1.0 ? std::pow(1.0 - s * s, 3) : 0.0;
        },
        g);
    const VectorPath r = el_residual(prob, VectorPath({q}));
    const double eps = 1e-4;
    const double di = (evaluate_functional(prob, VectorPath({q + eps * v})) -
                       evaluate_functional(prob, VectorPath({q + (-eps) * v}))) /
                      (2.0 * eps);
    double ip = 0.0;
    for (std::size_t k = 1; k < g.intervals(); ++k)
        ip += g.step() * r[0][k] * v[k];
    EXPECT_NEAR(ip, di, 1e-3 * std::abs(di));
}
