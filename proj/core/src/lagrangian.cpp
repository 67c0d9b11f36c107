#include "fracvar/lagrangian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

#include "fracvar/errors.hpp"

namespace fracvar {

namespace {

const char* slot_name(int slot)
{
    switch (slot) {
    case 0:
        return "q";
    case 1:
        return "d_l";
    default:
        return "d_r";
    }
}

} // namespace

Lagrangian::Lagrangian(std::size_t n, Eval eval, std::optional<Analytic> analytic, Options options)
    : n_(n), eval_(std::move(eval)), analytic_(std::move(analytic)), options_(options)
{
    if (n_ == 0)
        throw DomainError("lagrangian: state dimension must be at least 1");
    if (!eval_)
        throw DomainError("lagrangian: missing evaluator");
    if (!(options_.fd_step > 0.0) || !std::isfinite(options_.fd_step))
        throw DomainError("lagrangian: fd_step must be positive");
    if (!(options_.probe_hi > options_.probe_lo))
        throw DomainError("lagrangian: empty probe box");
    if (analytic_ && (!analytic_->dq || !analytic_->dl || !analytic_->dr))
        throw DomainError("lagrangian: analytic partials must provide all three gradients");
    if (analytic_)
        self_check();
}

double Lagrangian::operator()(double t, std::span<const double> q, std::span<const double> dl,
                              std::span<const double> dr) const
{
    return eval_(t, q, dl, dr);
}

Partials Lagrangian::partials(double t, std::span<const double> q, std::span<const double> dl,
                              std::span<const double> dr) const
{
    if (!analytic_)
        return fd_partials(t, q, dl, dr);
    Partials p{std::vector<double>(n_), std::vector<double>(n_, 0.0), std::vector<double>(n_, 0.0)};
    analytic_->dq(t, q, dl, dr, p.dq);
    if (options_.uses_left)
        analytic_->dl(t, q, dl, dr, p.dl);
    if (options_.uses_right)
        analytic_->dr(t, q, dl, dr, p.dr);
    return p;
}

Partials Lagrangian::fd_partials(double t, std::span<const double> q, std::span<const double> dl,
                                 std::span<const double> dr) const
{
    std::array<std::vector<double>, 3> x{std::vector<double>(q.begin(), q.end()),
                                         std::vector<double>(dl.begin(), dl.end()),
                                         std::vector<double>(dr.begin(), dr.end())};
    Partials p{std::vector<double>(n_, 0.0), std::vector<double>(n_, 0.0), std::vector<double>(n_, 0.0)};
    std::array<std::vector<double>*, 3> out{&p.dq, &p.dl, &p.dr};
    const std::array<bool, 3> used{true, options_.uses_left, options_.uses_right};
    for (int slot = 0; slot < 3; ++slot) {
        if (!used[slot])
            continue;
        for (std::size_t i = 0; i < n_; ++i) {
            const double xi = x[slot][i];
            const double h = options_.fd_step * (1.0 + std::abs(xi));
            x[slot][i] = xi + h;
            const double fp = eval_(t, x[0], x[1], x[2]);
            x[slot][i] = xi - h;
            const double fm = eval_(t, x[0], x[1], x[2]);
            x[slot][i] = xi;
            const double d = (fp - fm) / (2.0 * h);
            if (!std::isfinite(d))
                throw NumericalError("lagrangian: non-finite value near the probe point in coordinate "
                                     + std::string(slot_name(slot)) + "[" + std::to_string(i) + "]");
            (*out[slot])[i] = d;
        }
    }
    return p;
}

void Lagrangian::self_check() const
{
    std::mt19937_64 rng(options_.probe_seed);
    std::uniform_real_distribution<double> u(options_.probe_lo, options_.probe_hi);
    std::uniform_real_distribution<double> ut(0.0, 1.0);
    std::vector<double> q(n_), dl(n_), dr(n_);
    for (int probe = 0; probe < 10; ++probe) {
        const double t = ut(rng);
        for (std::size_t i = 0; i < n_; ++i) {
            q[i] = u(rng);
            dl[i] = u(rng);
            dr[i] = u(rng);
        }
        const Partials a = partials(t, q, dl, dr);
        const Partials f = fd_partials(t, q, dl, dr);
        const std::array<const std::vector<double>*, 3> av{&a.dq, &a.dl, &a.dr};
        const std::array<const std::vector<double>*, 3> fv{&f.dq, &f.dl, &f.dr};
        for (int slot = 0; slot < 3; ++slot) {
            for (std::size_t i = 0; i < n_; ++i) {
                const double x = (*av[slot])[i];
                const double y = (*fv[slot])[i];
                const double scale = std::max({1.0, std::abs(x), std::abs(y)});
                if (!(std::abs(x - y) <= 1e-4 * scale))
                    throw DomainError("lagrangian: analytic partial wrt " + std::string(slot_name(slot)) + "["
                                      + std::to_string(i) + "] disagrees with finite differences at probe "
                                      + std::to_string(probe));
            }
        }
    }
}

} // namespace fracvar
