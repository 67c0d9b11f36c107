#include "fracvar/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

namespace fracvar {

namespace {

struct Layout {
    std::size_t n;      // components
    std::size_t inner;  // interior nodes per component
    std::size_t size() const { return n * inner; }
};

// Stacked interior residual; masked interior entries become +inf.
Eigen::VectorXd stacked_residual(const FracProblem& prob, const std::vector<std::vector<double>>& values,
                                 const Layout& lay)
{
    std::vector<SampledSignal> comps;
    comps.reserve(lay.n);
    for (const auto& v : values)
        comps.emplace_back(prob.grid(), v);
    const VectorPath r = el_residual(prob, VectorPath(std::move(comps)));
    Eigen::VectorXd out(static_cast<Eigen::Index>(lay.size()));
    for (std::size_t i = 0; i < lay.n; ++i)
        for (std::size_t k = 0; k < lay.inner; ++k)
            out[static_cast<Eigen::Index>(i * lay.inner + k)] =
                r[i].valid(k + 1) ? r[i][k + 1] : std::numeric_limits<double>::infinity();
    return out;
}

double sup_norm(const Eigen::VectorXd& r)
{
    return r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff();
}

} // namespace

void SolverConfig::validate() const
{
    if (tol && !(*tol > 0.0 && std::isfinite(*tol)))
        throw DomainError("solver: tol must be positive");
    if (max_iter < 1)
        throw DomainError("solver: max_iter must be at least 1");
    if (!(damping >= 0.0) || !std::isfinite(damping))
        throw DomainError("solver: damping must be nonnegative");
}

double SolverConfig::resolved_tol(const Grid& grid) const
{
    return tol ? *tol : 1e-8 * static_cast<double>(grid.intervals());
}

double residual_norm(const FracProblem& prob, const VectorPath& q)
{
    const VectorPath r = el_residual(prob, q);
    double m = 0.0;
    for (std::size_t i = 0; i < r.dim(); ++i)
        for (std::size_t k = 1; k + 1 < r.size(); ++k)
            m = std::max(m, r[i].valid(k) ? std::abs(r[i][k]) : std::numeric_limits<double>::infinity());
    return m;
}

SolveResult solve_extremal(const FracProblem& prob, const VectorPath& q0, const SolverConfig& cfg)
{
    cfg.validate();
    prob.check_path(q0);
    prob.check_boundary(q0);
    const double tol = cfg.resolved_tol(prob.grid());
    const Layout lay{prob.dim(), prob.grid().intervals() - 1};
    const auto m = static_cast<Eigen::Index>(lay.size());

    std::vector<std::vector<double>> values;
    for (const auto& c : q0.components()) {
        values.emplace_back(c.values().begin(), c.values().end());
        for (std::size_t k = 1; k + 1 < c.size(); ++k)
            if (!c.valid(k))
                throw DomainError("solver: initial guess is masked at an interior node");
    }
    auto unknown = [&](Eigen::Index j) -> double& {
        const auto ju = static_cast<std::size_t>(j);
        return values[ju / lay.inner][ju % lay.inner + 1];
    };

    Eigen::VectorXd r = stacked_residual(prob, values, lay);
    double norm = sup_norm(r);
    if (!std::isfinite(norm))
        throw NumericalError("solver: residual of the initial guess is not finite");

    std::vector<TraceEntry> trace;
    double lambda = cfg.damping;
    trace.push_back({0, norm, lambda});
    const double eps = std::sqrt(std::numeric_limits<double>::epsilon());
    int iter = 0;
    Eigen::MatrixXd jac(m, m);
    while (norm > tol && iter < cfg.max_iter) {
        ++iter;
        for (Eigen::Index j = 0; j < m; ++j) {
            double& x = unknown(j);
            const double x0 = x;
            const double h = eps * (1.0 + std::abs(x0));
            x = x0 + h;
            jac.col(j) = (stacked_residual(prob, values, lay) - r) / h;
            x = x0;
        }
        if (!jac.allFinite())
            throw NumericalError("solver: non-finite Jacobian entry at iteration " + std::to_string(iter));
        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd g = jac.transpose() * r;
        const double diag_scale = jtj.diagonal().cwiseAbs().maxCoeff();
        if (!(diag_scale > 0.0))
            throw SingularSystemError("solver: the residual does not depend on the unknowns (zero Jacobian) at iteration "
                                      + std::to_string(iter) + "; increase the damping (regularization weight)");

        // Inner Levenberg loop: grow the damping until the step reduces ||r||_2.
        bool accepted = false;
        for (int attempt = 0; attempt < 40 && !accepted; ++attempt) {
            Eigen::MatrixXd a = jtj;
            a.diagonal().array() += lambda * diag_scale;
            Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
            Eigen::VectorXd step;
            if (ldlt.info() == Eigen::Success)
                step = ldlt.solve(-g);
            if (ldlt.info() != Eigen::Success || !step.allFinite() || ldlt.isNegative()) {
                if (lambda == 0.0 && attempt == 0) {
                    lambda = 1e-12;
                    continue;
                }
                throw SingularSystemError("solver: normal equations are singular at iteration "
                                          + std::to_string(iter)
                                          + "; increase the damping (regularization weight)");
            }
            std::vector<std::vector<double>> saved = values;
            for (Eigen::Index j = 0; j < m; ++j)
                unknown(j) += step[j];
            const Eigen::VectorXd r_new = stacked_residual(prob, values, lay);
            if (r_new.allFinite() && r_new.squaredNorm() < r.squaredNorm()) {
                r = r_new;
                norm = sup_norm(r);
                lambda /= 10.0;
                accepted = true;
            } else {
                values = std::move(saved);
                lambda = lambda == 0.0 ? 1e-12 : lambda * 10.0;
            }
        }
        trace.push_back({iter, norm, lambda});
        if (!accepted)
            break;
    }

    if (norm > tol)
        throw ConvergenceError("solver: residual norm " + std::to_string(norm) + " above tolerance "
                                   + std::to_string(tol) + " after " + std::to_string(iter) + " iterations",
                               norm, iter, std::move(trace));

    std::vector<SampledSignal> comps;
    for (auto& v : values)
        comps.emplace_back(prob.grid(), std::move(v));
    return {VectorPath(std::move(comps)), std::move(trace), norm, iter};
}

} // namespace fracvar
