#include "fracvar/noether.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracvar/errors.hpp"

namespace fracvar {

namespace {

double windowed_interior_max(const SampledSignal& s, const Window& w)
{
    return max_abs_interior(s, w);
}

SampledSignal dot(const VectorPath& x, const VectorPath& y)
{
    SampledSignal s = x[0] * y[0];
    for (std::size_t i = 1; i < x.dim(); ++i)
        s = s + x[i] * y[i];
    return s;
}

void require_no_time_change(const Generator& gen, const char* what)
{
    if (gen.has_time_change())
        throw DomainError(std::string(what)
                          + ": the generator changes time (tau != 0); use conservation verification instead");
}

} // namespace

Generator::Generator(std::size_t n, Tau tau, Xi xi) : n_(n), tau_(std::move(tau)), xi_(std::move(xi))
{
    if (n_ == 0)
        throw DomainError("generator: dimension must be at least 1");
    if (!xi_)
        throw DomainError("generator: missing xi");
}

std::vector<double> Generator::xi(NodePoint p, std::span<const double> q) const
{
    std::vector<double> out(n_, 0.0);
    xi_(p, q, out);
    return out;
}

SampledSignal Generator::tau_signal(const VectorPath& q) const
{
    const Grid& g = q.grid();
    std::vector<double> v(g.size());
    std::vector<bool> mask(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        mask[k] = q.valid_at(k);
        v[k] = mask[k] ? tau({k, g.node(k)}, q.at(k)) : 0.0;
    }
    return SampledSignal(g, std::move(v), std::move(mask));
}

VectorPath Generator::xi_path(const VectorPath& q) const
{
    if (q.dim() != n_)
        throw DomainError("generator: path dimension differs from the generator dimension");
    const Grid& g = q.grid();
    std::vector<std::vector<double>> cols(n_, std::vector<double>(g.size(), 0.0));
    std::vector<bool> mask(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        mask[k] = q.valid_at(k);
        if (!mask[k])
            continue;
        const auto x = xi({k, g.node(k)}, q.at(k));
        for (std::size_t i = 0; i < n_; ++i)
            cols[i][k] = x[i];
    }
    std::vector<SampledSignal> s;
    for (auto& c : cols)
        s.emplace_back(g, std::move(c), mask);
    return VectorPath(std::move(s));
}

SampledSignal d_gamma(const SampledSignal& f, const SampledSignal& g, FracOrder gamma, Scheme scheme)
{
    require_same_grid(f.grid(), g.grid(), "d_gamma");
    if (!gamma.is_variational())
        throw DomainError("d_gamma: order must lie in (0, 1]");
    const FracOperator right(gamma, Side::Right, scheme, f.grid());
    const FracOperator left(gamma, Side::Left, scheme, f.grid());
    return f * left.apply(g) - g * right.apply(f);
}

const char* to_string(Orientation o) noexcept
{
    return o == Orientation::Forward ? "forward" : "reversed";
}

SampledSignal pair_defect_signal(const Pair& p, Scheme scheme)
{
    return p.orientation == Orientation::Forward ? d_gamma(p.c1, p.c2, p.gamma, scheme)
                                                 : d_gamma(p.c2, p.c1, p.gamma, scheme);
}

double invariance_defect(const FracProblem& prob, const VectorPath& q, const Generator& gen,
                         std::optional<Window> window)
{
    require_no_time_change(gen, "invariance_defect");
    prob.check_path(q);
    const PartialSignals ps = partial_signals(prob, q);
    const VectorPath xi = gen.xi_path(q);
    const auto& opts = prob.lagrangian().options();
    SampledSignal s = dot(ps.dq, xi);
    for (std::size_t i = 0; i < prob.dim(); ++i) {
        if (opts.uses_left)
            s = s + ps.dl[i] * prob.left_alpha().apply(xi[i]);
        if (opts.uses_right)
            s = s + ps.dr[i] * prob.right_beta().apply(xi[i]);
    }
    return windowed_interior_max(s, window.value_or(Window::whole(prob.grid())));
}

NoTimeQuantity noether_quantity_no_time(const FracProblem& prob, const VectorPath& q, const Generator& gen)
{
    require_no_time_change(gen, "noether_quantity_no_time");
    prob.check_path(q);
    const PartialSignals ps = partial_signals(prob, q);
    const VectorPath xi = gen.xi_path(q);
    const auto& opts = prob.lagrangian().options();
    SampledSignal c = dot(ps.dl, xi) - dot(ps.dr, xi);
    Decomposition dec;
    for (std::size_t i = 0; i < prob.dim(); ++i) {
        const std::string idx = std::to_string(i + 1);
        if (opts.uses_left)
            dec.pairs.push_back({ps.dl[i], xi[i], prob.alpha(), Orientation::Forward, "p3:" + idx + "*xi:" + idx});
        if (opts.uses_right)
            dec.pairs.push_back({xi[i], -ps.dr[i], prob.beta(), Orientation::Forward, "xi:" + idx + "*-p4:" + idx});
    }
    return {std::move(c), std::move(dec)};
}

SampledSignal tau_bracket(const FracProblem& prob, const VectorPath& q)
{
    const PathDerivatives d = derivatives(prob, q);
    const PartialSignals ps = partial_signals(prob, q, d);
    return ps.lagrangian - prob.alpha().value() * dot(ps.dl, d.left) - prob.beta().value() * dot(ps.dr, d.right);
}

SampledSignal noether_quantity(const FracProblem& prob, const VectorPath& q, const Generator& gen)
{
    prob.check_path(q);
    const PathDerivatives d = derivatives(prob, q);
    const PartialSignals ps = partial_signals(prob, q, d);
    const VectorPath xi = gen.xi_path(q);
    SampledSignal c = dot(ps.dl, xi) - dot(ps.dr, xi);
    if (!gen.has_time_change())
        return c;
    const SampledSignal bracket =
        ps.lagrangian - prob.alpha().value() * dot(ps.dl, d.left) - prob.beta().value() * dot(ps.dr, d.right);
    return c + bracket * gen.tau_signal(q);
}

double noether_density(const Lagrangian& lag, double alpha, double beta, double t, std::span<const double> q,
                       std::span<const double> dl, std::span<const double> dr, double tau,
                       std::span<const double> xi)
{
    const Partials p = lag.partials(t, q, dl, dr);
    double c = 0.0;
    double bracket = lag(t, q, dl, dr);
    for (std::size_t i = 0; i < lag.dim(); ++i) {
        c += (p.dl[i] - p.dr[i]) * xi[i];
        bracket -= alpha * p.dl[i] * dl[i] + beta * p.dr[i] * dr[i];
    }
    return c + bracket * tau;
}

ConservationReport verify_fractional_conserved(const Decomposition& dec, const SampledSignal& target,
                                               const VerifyOptions& opts)
{
    if (dec.pairs.empty())
        throw DomainError("verify: empty decomposition");
    if (!(opts.tol > 0.0))
        throw DomainError("verify: tolerance must be positive");
    const Grid& g = target.grid();
    ConservationReport rep;
    rep.tol = opts.tol;
    rep.window = Window::trimmed(g, opts.trim);
    SampledSignal sum = SampledSignal::zeros(g);
    bool ok = true;
    for (const auto& p : dec.pairs) {
        require_same_grid(g, p.c1.grid(), "verify pair");
        require_same_grid(g, p.c2.grid(), "verify pair");
        SampledSignal defect = pair_defect_signal(p, opts.scheme);
        const double wd = max_abs_interior(defect, rep.window);
        const double gd = max_abs_interior(defect, Window::whole(g));
        ok = ok && wd <= opts.tol;
        rep.pairs.push_back({p.label, p.gamma.value(), p.orientation, wd, gd, std::move(defect)});
        sum = sum + p.c1 * p.c2;
    }
    rep.reconstruction_error = max_abs(sum - target);
    rep.pass = ok && rep.reconstruction_error <= opts.tol;
    return rep;
}

ConservationReport verify_noether(const FracProblem& prob, const VectorPath& q, const Generator& gen,
                                  const std::optional<Decomposition>& user, const VerifyOptions& opts)
{
    if (user)
        return verify_fractional_conserved(*user, noether_quantity(prob, q, gen), opts);
    if (!gen.has_time_change()) {
        const NoTimeQuantity nq = noether_quantity_no_time(prob, q, gen);
        return verify_fractional_conserved(nq.decomposition, nq.quantity, opts);
    }
    const Generator spatial(gen.dim(), nullptr, [&gen](NodePoint p, std::span<const double> x, std::span<double> out) {
        const auto v = gen.xi(p, x);
        std::copy(v.begin(), v.end(), out.begin());
    });
    const NoTimeQuantity nq = noether_quantity_no_time(prob, q, spatial);
    ConservationReport rep = verify_fractional_conserved(nq.decomposition, nq.quantity, opts);
    rep.unverified.push_back("tau-term");
    return rep;
}

double classical_conservation_defect(const SampledSignal& c, std::optional<Window> window)
{
    const Grid& g = c.grid();
    const Window w = window.value_or(Window::whole(g));
    double m = 0.0;
    for (std::size_t k = 1; k + 1 < g.size(); ++k) {
        if (!c.valid(k - 1) || !c.valid(k + 1) || !w.contains(g.node(k)))
            continue;
        m = std::max(m, std::abs(c[k + 1] - c[k - 1]) / (2.0 * g.step()));
    }
    return m;
}

double teonet_density(const Lagrangian& lag, double t, std::span<const double> q, std::span<const double> v,
                      double tau, std::span<const double> xi)
{
    std::vector<double> neg(v.begin(), v.end());
    for (auto& x : neg)
        x = -x;
    const double lc = lag(t, q, v, neg);
    const Partials p = lag.partials(t, q, v, neg);
    double c = 0.0;
    double bracket = lc;
    for (std::size_t i = 0; i < lag.dim(); ++i) {
        const double dv = p.dl[i] - p.dr[i];
        c += dv * xi[i];
        bracket -= dv * v[i];
    }
    return c + bracket * tau;
}

VectorPath fd_velocity(const VectorPath& q)
{
    const Grid& g = q.grid();
    const std::size_t last = g.intervals();
    const double h = g.step();
    std::vector<SampledSignal> out;
    for (const auto& c : q.components()) {
        if (!c.fully_valid())
            throw DomainError("fd_velocity: path must be valid at every node");
        std::vector<double> v(g.size());
        v[0] = (-3.0 * c[0] + 4.0 * c[1] - c[2]) / (2.0 * h);
        v[last] = (3.0 * c[last] - 4.0 * c[last - 1] + c[last - 2]) / (2.0 * h);
        for (std::size_t k = 1; k < last; ++k)
            v[k] = (c[k + 1] - c[k - 1]) / (2.0 * h);
        out.emplace_back(g, std::move(v));
    }
    return VectorPath(std::move(out));
}

SampledSignal classical_noether_quantity(const Lagrangian& lag, const VectorPath& q, const Generator& gen)
{
    const VectorPath v = fd_velocity(q);
    const Grid& g = q.grid();
    std::vector<double> out(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const NodePoint p{k, g.node(k)};
        const auto qk = q.at(k);
        out[k] = teonet_density(lag, p.t, qk, v.at(k), gen.tau(p, qk), gen.xi(p, qk));
    }
    return SampledSignal(g, std::move(out));
}

} // namespace fracvar
