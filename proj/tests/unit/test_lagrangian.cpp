#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fracvar/errors.hpp"
#include "fracvar/fixtures.hpp"
#include "fracvar/lagrangian.hpp"

using namespace fracvar;
using CSpan = std::span<const double>;

TEST(Lagrangian, QuadraticInLeftSlot)
{
    const Lagrangian lag(1, [](double, CSpan, CSpan dl, CSpan) { return 0.5 * dl[0] * dl[0]; });
    const std::vector<double> q{0.7}, dl{3.0}, dr{-2.0};
    const Partials p = lag.partials(0.2, q, dl, dr);
    EXPECT_NEAR(p.dq[0], 0.0, 1e-9);
    EXPECT_NEAR(p.dl[0], 3.0, 1e-8);
    EXPECT_NEAR(p.dr[0], 0.0, 1e-9);
    EXPECT_DOUBLE_EQ(lag(0.2, q, dl, dr), 4.5);
}

TEST(Lagrangian, Bilinear)
{
    const Lagrangian lag(1, [](double, CSpan q, CSpan, CSpan dr) { return q[0] * dr[0]; });
    const std::vector<double> q{2.0}, dl{0.0}, dr{5.0};
    const Partials p = lag.partials(0.0, q, dl, dr);
    EXPECT_NEAR(p.dq[0], 5.0, 1e-8);
    EXPECT_NEAR(p.dl[0], 0.0, 1e-12);
    EXPECT_NEAR(p.dr[0], 2.0, 1e-8);
}

TEST(Lagrangian, AnalyticMatchesFiniteDifferences)
{
    const Lagrangian lag = builtin_lagrangian("example2");
    ASSERT_TRUE(lag.has_analytic());
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> q(4), dl(4), dr(4);
    for (int probe = 0; probe < 10; ++probe) {
        for (std::size_t i = 0; i < 4; ++i) {
            q[i] = u(rng);
            dl[i] = u(rng);
            dr[i] = u(rng);
        }
        const double t = 0.5 * (1.0 + u(rng));
        const Partials a = lag.partials(t, q, dl, dr);
        const Partials f = lag.fd_partials(t, q, dl, dr);
        for (std::size_t i = 0; i < 4; ++i) {
            EXPECT_NEAR(a.dq[i], f.dq[i], 1e-5 * std::max(1.0, std::abs(a.dq[i])));
            EXPECT_NEAR(a.dr[i], f.dr[i], 1e-5 * std::max(1.0, std::abs(a.dr[i])));
            EXPECT_EQ(a.dl[i], 0.0);
        }
    }
}

TEST(Lagrangian, BuiltinsPassSelfCheck)
{
    for (const char* name : {"free_particle", "harmonic", "example1", "example2"})
        EXPECT_NO_THROW(builtin_lagrangian(name)) << name;
    EXPECT_THROW(builtin_lagrangian("pendulum"), DomainError);
}

TEST(Lagrangian, SelfCheckRejectsWrongPartials)
{
    auto eval = [](double, CSpan q, CSpan dl, CSpan) { return q[0] * q[0] + dl[0]; };
    auto zero = [](double, CSpan, CSpan, CSpan, std::span<double> out) { out[0] = 0.0; };
    auto one = [](double, CSpan, CSpan, CSpan, std::span<double> out) { out[0] = 1.0; };
    auto twice_q = [](double, CSpan q, CSpan, CSpan, std::span<double> out) { out[0] = 2.0 * q[0]; };
    EXPECT_NO_THROW(Lagrangian(1, eval, AnalyticPartials{twice_q, one, zero}));
    try {
        Lagrangian(1, eval, AnalyticPartials{twice_q, zero, zero});
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("d_l[0]"), std::string::npos);
    }
}

TEST(Lagrangian, NonFiniteNamesCoordinate)
{
    const Lagrangian lag(2, [](double, CSpan q, CSpan, CSpan dr) { return std::log(q[0]) + std::sqrt(dr[1]); });
    const std::vector<double> q{1.0, 1.0}, dl{0.0, 0.0}, dr{1.0, 0.0};
    try {
        lag.partials(0.0, q, dl, dr);
        FAIL();
    } catch (const NumericalError& e) {
        EXPECT_NE(std::string(e.what()).find("d_r[1]"), std::string::npos) << e.what();
    }
}

TEST(Lagrangian, UnusedSlotNotDifferentiated)
{
    LagrangianOptions opts;
    opts.uses_right = false;
    int calls = 0;
    const Lagrangian lag(
        1,
        [&calls](double, CSpan q, CSpan dl, CSpan dr) {
            ++calls;
            return q[0] * dl[0] + dr[0];
        },
        opts);
    const std::vector<double> q{3.0}, dl{2.0}, dr{9.0};
    const Partials p = lag.partials(0.0, q, dl, dr);
    EXPECT_EQ(p.dr[0], 0.0);
    EXPECT_NEAR(p.dq[0], 2.0, 1e-8);
    EXPECT_NEAR(p.dl[0], 3.0, 1e-8);
    EXPECT_EQ(calls, 4);
}

TEST(Lagrangian, RejectsBadConstruction)
{
    auto eval = [](double, CSpan, CSpan, CSpan) { return 0.0; };
    EXPECT_THROW(Lagrangian(0, eval), DomainError);
    EXPECT_THROW(Lagrangian(1, Lagrangian::Eval{}), DomainError);
    LagrangianOptions opts;
    opts.fd_step = 0.0;
    EXPECT_THROW(Lagrangian(1, eval, opts), DomainError);
}
