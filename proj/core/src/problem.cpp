#include "fracvar/problem.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fracvar/errors.hpp"

namespace fracvar {

namespace {

FracOrder checked_order(FracOrder order, const char* name)
{
    if (!order.is_variational())
        throw DomainError(std::string("problem: ") + name + " must lie in (0, 1]");
    return order;
}

VectorPath apply_each(const FracOperator& op, const VectorPath& q)
{
    std::vector<SampledSignal> out;
    out.reserve(q.dim());
    for (const auto& c : q.components())
        out.push_back(op.apply(c));
    return VectorPath(std::move(out));
}

VectorPath zeros_like(const VectorPath& q)
{
    return VectorPath(std::vector<SampledSignal>(q.dim(), SampledSignal::zeros(q.grid())));
}

} // namespace

FracProblem::FracProblem(Lagrangian lagrangian, FracOrder alpha, FracOrder beta, const Grid& grid,
                         Boundary boundary, Scheme scheme)
    : lagrangian_(std::move(lagrangian)),
      alpha_(checked_order(alpha, "alpha")),
      beta_(checked_order(beta, "beta")),
      grid_(grid),
      boundary_(std::move(boundary)),
      scheme_(scheme),
      left_alpha_(alpha, Side::Left, scheme, grid),
      right_beta_(beta, Side::Right, scheme, grid),
      right_alpha_(alpha, Side::Right, scheme, grid),
      left_beta_(beta, Side::Left, scheme, grid)
{
    const std::size_t n = lagrangian_.dim();
    if (boundary_.left.size() != n || boundary_.right.size() != n)
        throw DomainError("problem: boundary vectors must have " + std::to_string(n) + " entries");
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(boundary_.left[i]) || !std::isfinite(boundary_.right[i]))
            throw DomainError("problem: boundary values must be finite");
}

void FracProblem::check_path(const VectorPath& q) const
{
    require_same_grid(grid_, q.grid(), "problem path");
    if (q.dim() != dim())
        throw DomainError("problem: path has " + std::to_string(q.dim()) + " components, expected "
                          + std::to_string(dim()));
}

void FracProblem::check_boundary(const VectorPath& q) const
{
    const std::size_t last = grid_.intervals();
    for (std::size_t i = 0; i < dim(); ++i) {
        const double qa = q[i][0];
        const double qb = q[i][last];
        const bool ok_a = q[i].valid(0) && std::abs(qa - boundary_.left[i]) <= 1e-12 * (1.0 + std::abs(qa));
        const bool ok_b = q[i].valid(last) && std::abs(qb - boundary_.right[i]) <= 1e-12 * (1.0 + std::abs(qb));
        if (!ok_a || !ok_b)
            throw DomainError("problem: component " + std::to_string(i + 1) + " violates the boundary values");
    }
}

PathDerivatives derivatives(const FracProblem& prob, const VectorPath& q)
{
    prob.check_path(q);
    const auto& opts = prob.lagrangian().options();
    return {opts.uses_left ? apply_each(prob.left_alpha(), q) : zeros_like(q),
            opts.uses_right ? apply_each(prob.right_beta(), q) : zeros_like(q)};
}

PartialSignals partial_signals(const FracProblem& prob, const VectorPath& q, const PathDerivatives& d)
{
    prob.check_path(q);
    const Grid& g = prob.grid();
    const std::size_t n = prob.dim();
    const std::size_t m = g.size();
    const Lagrangian& lag = prob.lagrangian();

    std::vector<double> lv(m, 0.0);
    std::vector<bool> lmask(m, false);
    std::vector<std::vector<double>> pq(n, std::vector<double>(m, 0.0));
    std::vector<std::vector<double>> pl = pq;
    std::vector<std::vector<double>> pr = pq;
    std::vector<double> qs(n), ls(n), rs(n);
    for (std::size_t k = 0; k < m; ++k) {
        const bool complete = q.valid_at(k) && d.left.valid_at(k) && d.right.valid_at(k);
        // With analytic partials, a node with masked inputs still yields every
        // partial that does not read them (NaN propagates into the others).
        if (!complete && !lag.has_analytic()) {
            for (std::size_t i = 0; i < n; ++i)
                pq[i][k] = pl[i][k] = pr[i][k] = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            qs[i] = q[i][k];
            ls[i] = d.left[i][k];
            rs[i] = d.right[i][k];
        }
        const double t = g.node(k);
        const Partials p = lag.partials(t, qs, ls, rs);
        for (std::size_t i = 0; i < n; ++i) {
            pq[i][k] = p.dq[i];
            pl[i][k] = p.dl[i];
            pr[i][k] = p.dr[i];
        }
        if (complete) {
            lv[k] = lag(t, qs, ls, rs);
            lmask[k] = std::isfinite(lv[k]);
        }
    }
    auto to_path = [&](std::vector<std::vector<double>>& cols) {
        std::vector<SampledSignal> s;
        s.reserve(n);
        for (auto& c : cols)
            s.emplace_back(g, std::move(c));
        return VectorPath(std::move(s));
    };
    SampledSignal lsig(g, std::move(lv), std::move(lmask));
    return {std::move(lsig), to_path(pq), to_path(pl), to_path(pr)};
}

PartialSignals partial_signals(const FracProblem& prob, const VectorPath& q)
{
    return partial_signals(prob, q, derivatives(prob, q));
}

double evaluate_functional(const FracProblem& prob, const VectorPath& q)
{
    prob.check_path(q);
    prob.check_boundary(q);
    const Grid& g = prob.grid();
    const std::size_t n = prob.dim();
    const std::size_t m = g.size();
    const Lagrangian& lag = prob.lagrangian();
    const PathDerivatives d = derivatives(prob, q);
    std::vector<double> v(m, 0.0);
    std::vector<bool> mask(m, false);
    std::vector<double> qs(n), ls(n), rs(n);
    for (std::size_t k = 0; k < m; ++k) {
        if (!q.valid_at(k) || !d.left.valid_at(k) || !d.right.valid_at(k))
            continue;
        for (std::size_t i = 0; i < n; ++i) {
            qs[i] = q[i][k];
            ls[i] = d.left[i][k];
            rs[i] = d.right[i][k];
        }
        v[k] = lag(g.node(k), qs, ls, rs);
        mask[k] = std::isfinite(v[k]);
    }
    return integrate(SampledSignal(g, std::move(v), std::move(mask))).value;
}

VectorPath el_residual(const FracProblem& prob, const VectorPath& q)
{
    const PartialSignals ps = partial_signals(prob, q);
    const auto& opts = prob.lagrangian().options();
    const Grid& g = prob.grid();
    const std::size_t last = g.intervals();
    std::vector<SampledSignal> out;
    out.reserve(prob.dim());
    for (std::size_t i = 0; i < prob.dim(); ++i) {
        SampledSignal r = ps.dq[i];
        if (opts.uses_left)
            r = r + prob.right_alpha().apply(ps.dl[i]);
        if (opts.uses_right)
            r = r + prob.left_beta().apply(ps.dr[i]);
        std::vector<double> v(r.values().begin(), r.values().end());
        std::vector<bool> mask = r.mask();
        mask[0] = false;
        mask[last] = false;
        out.emplace_back(g, std::move(v), std::move(mask));
    }
    return VectorPath(std::move(out));
}

} // namespace fracvar
