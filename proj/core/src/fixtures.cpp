#include "fracvar/fixtures.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "fracvar/errors.hpp"

namespace fracvar {

namespace {

using CSpan = std::span<const double>;
using Span = std::span<double>;

Lagrangian make_example1_lagrangian()
{
    auto eval = [](double, CSpan q, CSpan dl, CSpan) { return dl[0] * q[1] - dl[1] * q[0] - (q[0] - q[1]) * q[2]; };
    AnalyticPartials a{
        [](double, CSpan q, CSpan dl, CSpan, Span out) {
            out[0] = -dl[1] - q[2];
            out[1] = dl[0] + q[2];
            out[2] = -(q[0] - q[1]);
        },
        [](double, CSpan q, CSpan, CSpan, Span out) {
            out[0] = q[1];
            out[1] = -q[0];
            out[2] = 0.0;
        },
        [](double, CSpan, CSpan, CSpan, Span out) { std::fill(out.begin(), out.end(), 0.0); },
    };
    LagrangianOptions opts;
    opts.uses_right = false;
    return Lagrangian(3, eval, a, opts);
}

Lagrangian make_example2_lagrangian()
{
    auto eval = [](double, CSpan q, CSpan, CSpan dr) {
        return -dr[0] * q[1] - dr[2] * q[3] + 0.5 * q[3] * q[3] - q[1] * q[2];
    };
    AnalyticPartials a{
        [](double, CSpan q, CSpan, CSpan dr, Span out) {
            out[0] = 0.0;
            out[1] = -dr[0] - q[2];
            out[2] = -q[1];
            out[3] = -dr[2] + q[3];
        },
        [](double, CSpan, CSpan, CSpan, Span out) { std::fill(out.begin(), out.end(), 0.0); },
        [](double, CSpan q, CSpan, CSpan, Span out) {
            out[0] = -q[1];
            out[1] = 0.0;
            out[2] = -q[3];
            out[3] = 0.0;
        },
    };
    LagrangianOptions opts;
    opts.uses_left = false;
    return Lagrangian(4, eval, a, opts);
}

Lagrangian make_free_particle()
{
    auto eval = [](double, CSpan, CSpan dl, CSpan) { return 0.5 * dl[0] * dl[0]; };
    AnalyticPartials a{
        [](double, CSpan, CSpan, CSpan, Span out) { out[0] = 0.0; },
        [](double, CSpan, CSpan dl, CSpan, Span out) { out[0] = dl[0]; },
        [](double, CSpan, CSpan, CSpan, Span out) { out[0] = 0.0; },
    };
    LagrangianOptions opts;
    opts.uses_right = false;
    return Lagrangian(1, eval, a, opts);
}

Lagrangian make_harmonic()
{
    auto eval = [](double, CSpan q, CSpan dl, CSpan) { return 0.5 * (dl[0] * dl[0] - q[0] * q[0]); };
    AnalyticPartials a{
        [](double, CSpan q, CSpan, CSpan, Span out) { out[0] = -q[0]; },
        [](double, CSpan, CSpan dl, CSpan, Span out) { out[0] = dl[0]; },
        [](double, CSpan, CSpan, CSpan, Span out) { out[0] = 0.0; },
    };
    LagrangianOptions opts;
    opts.uses_right = false;
    return Lagrangian(1, eval, a, opts);
}

Generator example1_generator(double c, double tau_scale, double xi_scale)
{
    return Generator(
        3, [=](NodePoint p, CSpan) { return -c * tau_scale * p.t; },
        [=](NodePoint, CSpan q, Span out) {
            out[0] = 0.0;
            out[1] = 0.0;
            out[2] = c * xi_scale * q[2];
        });
}

Generator example2_generator(double c, double tau_scale, double xi_scale)
{
    return Generator(
        4, [=](NodePoint p, CSpan) { return 2.0 * c * tau_scale * p.t / 3.0; },
        [=](NodePoint, CSpan q, Span out) {
            const double s = c * xi_scale;
            out[0] = s * q[0];
            out[1] = -s * q[1];
            out[2] = s * q[2] / 3.0;
            out[3] = -s * q[3] / 3.0;
        });
}

SampledSignal time_signal(const Grid& g)
{
    return sample([](double t) { return t; }, g);
}

// Forward substitution for rows 1..N of a lower-triangular operator: op x = rhs, x[0] given.
std::vector<double> solve_left(const FracOperator& op, const std::vector<double>& rhs, double x0)
{
    const std::size_t m = rhs.size();
    std::vector<double> x(m, 0.0);
    x[0] = x0;
    for (std::size_t k = 1; k < m; ++k) {
        double s = rhs[k];
        for (std::size_t j = 0; j < k; ++j)
            s -= op.entry(k, j) * x[j];
        x[k] = s / op.entry(k, k);
    }
    return x;
}

// Back substitution for rows 0..N-1 of an upper-triangular operator, x[N] given.
std::vector<double> solve_right(const FracOperator& op, const std::vector<double>& rhs, double xn)
{
    const std::size_t m = rhs.size();
    std::vector<double> x(m, 0.0);
    x[m - 1] = xn;
    for (std::size_t k = m - 1; k-- > 0;) {
        double s = rhs[k];
        for (std::size_t j = k + 1; j < m; ++j)
            s -= op.entry(k, j) * x[j];
        x[k] = s / op.entry(k, k);
    }
    return x;
}

} // namespace

FracProblem ExampleFixture::make_problem(const Grid& grid, Boundary boundary, Scheme scheme) const
{
    const FracOrder one(1.0);
    const FracOrder alpha = id == 1 ? order : one;
    const FracOrder beta = id == 2 ? order : one;
    return FracProblem(lagrangian, alpha, beta, grid, std::move(boundary), scheme);
}

FracProblem ExampleFixture::make_problem(const VectorPath& q, Scheme scheme) const
{
    const std::size_t last = q.grid().intervals();
    Boundary bc;
    for (std::size_t i = 0; i < q.dim(); ++i) {
        bc.left.push_back(q[i][0]);
        bc.right.push_back(q[i][last]);
    }
    return make_problem(q.grid(), std::move(bc), scheme);
}

ExampleFixture example1(FracOrder alpha)
{
    if (!alpha.is_variational())
        throw DomainError("example1: order must lie in (0, 1]");
    auto expected = [](const FracProblem& prob, const VectorPath& q) {
        return -example1_printed_quantity(prob, q);
    };
    return {1, alpha, make_example1_lagrangian(), example1_generator(1.0, 1.0, 1.0), expected};
}

ExampleFixture example2(FracOrder beta)
{
    if (!beta.is_variational())
        throw DomainError("example2: order must lie in (0, 1]");
    auto expected = [](const FracProblem& prob, const VectorPath& q) {
        const double b = prob.beta().value();
        const VectorPath d = derivatives(prob, q).right;
        const SampledSignal t = time_signal(prob.grid());
        const SampledSignal bracket = (b - 1.0) * (d[0] * q[1] + d[2] * q[3])
                                      + 0.5 * (q[3] * q[3] - 2.0 * q[1] * q[2]);
        return (2.0 / 3.0) * bracket * t + q[0] * q[1] + (1.0 / 3.0) * (q[2] * q[3]);
    };
    return {2, beta, make_example2_lagrangian(), example2_generator(1.0, 1.0, 1.0), expected};
}

VectorPath example1_extremal(FracOrder alpha, const PowerProfile& profile, const Grid& grid)
{
    const SampledSignal q = profile.sample(grid);
    const SampledSignal q3 = profile.sample_derivative(alpha, Side::Right, grid)
                             - profile.sample_derivative(alpha, Side::Left, grid);
    return VectorPath({q, q, q3});
}

SampledSignal example1_printed_quantity(const FracProblem& prob, const VectorPath& q)
{
    const double a = prob.alpha().value();
    const VectorPath d = derivatives(prob, q).left;
    const SampledSignal t = time_signal(prob.grid());
    return ((1.0 - a) * (d[0] * q[1] - d[1] * q[0]) - (q[0] - q[1]) * q[2]) * t;
}

VectorPath example2_extremal(FracOrder beta, const SampledSignal& seed, Scheme scheme)
{
    if (!beta.is_variational())
        throw DomainError("example2_extremal: order must lie in (0, 1]");
    if (!seed.fully_valid())
        throw DomainError("example2_extremal: seed must be valid at every node");
    const Grid& g = seed.grid();
    const std::size_t m = g.size();
    const FracOperator left(beta, Side::Left, scheme, g);
    const FracOperator right(beta, Side::Right, scheme, g);

    // q2 spans the discrete kernel of the left operator (rows 1..N).
    const std::vector<double> kernel = [&] {
        std::vector<double> z(m, 0.0);
        return solve_left(left, z, 1.0);
    }();

    auto build = [&](const std::array<double, 4>& c) {
        std::vector<double> q2(m);
        for (std::size_t k = 0; k < m; ++k)
            q2[k] = c[0] * kernel[k];
        std::vector<double> rhs(m);
        for (std::size_t k = 0; k < m; ++k)
            rhs[k] = -q2[k];
        std::vector<double> q4 = solve_left(left, rhs, c[1]);
        std::vector<double> q3 = solve_right(right, q4, c[2]);
        for (std::size_t k = 0; k < m; ++k)
            rhs[k] = -q3[k];
        std::vector<double> q1 = solve_right(right, rhs, c[3]);
        return std::array<std::vector<double>, 4>{std::move(q1), std::move(q2), std::move(q3), std::move(q4)};
    };

    std::array<std::array<std::vector<double>, 4>, 4> basis;
    Eigen::MatrixXd a(static_cast<Eigen::Index>(m), 4);
    for (int j = 0; j < 4; ++j) {
        std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};
        c[static_cast<std::size_t>(j)] = 1.0;
        basis[static_cast<std::size_t>(j)] = build(c);
        for (std::size_t k = 0; k < m; ++k)
            a(static_cast<Eigen::Index>(k), j) = basis[static_cast<std::size_t>(j)][0][k];
    }
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(m));
    for (std::size_t k = 0; k < m; ++k)
        rhs[static_cast<Eigen::Index>(k)] = seed[k];
    const Eigen::VectorXd coef = a.completeOrthogonalDecomposition().solve(rhs);
    if (!coef.allFinite())
        throw NumericalError("example2_extremal: least-squares fit failed");

    std::array<double, 4> c{};
    for (int j = 0; j < 4; ++j)
        c[static_cast<std::size_t>(j)] = coef[j];
    auto cols = build(c);
    std::vector<SampledSignal> comps;
    for (auto& col : cols)
        comps.emplace_back(g, std::move(col));
    return VectorPath(std::move(comps));
}

SampledSignal example2_classical_quantity(const VectorPath& q)
{
    const SampledSignal t = time_signal(q.grid());
    return q[0] * q[1] + (1.0 / 3.0) * (q[2] * q[3]) + (1.0 / 3.0) * ((q[3] * q[3] - 2.0 * q[1] * q[2]) * t);
}

SampledSignal euler_energy(const Lagrangian& lag, const VectorPath& q)
{
    const Generator time_shift(lag.dim(), [](NodePoint, CSpan) { return 1.0; },
                               [](NodePoint, CSpan, Span out) { std::fill(out.begin(), out.end(), 0.0); });
    return -classical_noether_quantity(lag, q, time_shift);
}

Lagrangian builtin_lagrangian(const std::string& name)
{
    if (name == "free_particle")
        return make_free_particle();
    if (name == "harmonic")
        return make_harmonic();
    if (name == "example1")
        return make_example1_lagrangian();
    if (name == "example2")
        return make_example2_lagrangian();
    throw DomainError("unknown Lagrangian '" + name + "' (expected free_particle, harmonic, example1 or example2)");
}

Generator builtin_generator(const std::string& name, std::size_t n, double c, double tau_scale, double xi_scale)
{
    if (name == "example1") {
        if (n != 3)
            throw DomainError("generator example1 needs n = 3");
        return example1_generator(c, tau_scale, xi_scale);
    }
    if (name == "example2") {
        if (n != 4)
            throw DomainError("generator example2 needs n = 4");
        return example2_generator(c, tau_scale, xi_scale);
    }
    if (name == "translation")
        return Generator(n, nullptr, [=](NodePoint, CSpan, Span out) {
            std::fill(out.begin(), out.end(), c * xi_scale);
        });
    if (name == "time_translation")
        return Generator(
            n, [=](NodePoint, CSpan) { return c * tau_scale; },
            [](NodePoint, CSpan, Span out) { std::fill(out.begin(), out.end(), 0.0); });
    throw DomainError("unknown generator '" + name
                      + "' (expected example1, example2, translation or time_translation)");
}

} // namespace fracvar
