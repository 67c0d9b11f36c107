#pragma once

#include <vector>

#include "fracvar/fracdiff.hpp"
#include "fracvar/lagrangian.hpp"
#include "fracvar/signal.hpp"

namespace fracvar {

/// Fixed end values q(a) and q(b).
struct Boundary {
    std::vector<double> left;
    std::vector<double> right;
};

/// Minimize or extremize int_a^b L(t, q, D_left^alpha q, D_right^beta q) dt
/// subject to fixed end values, with 0 < alpha, beta <= 1.
class FracProblem {
public:
    FracProblem(Lagrangian lagrangian, FracOrder alpha, FracOrder beta, const Grid& grid, Boundary boundary,
                Scheme scheme = Scheme::GL);

    const Lagrangian& lagrangian() const noexcept { return lagrangian_; }
    FracOrder alpha() const noexcept { return alpha_; }
    FracOrder beta() const noexcept { return beta_; }
    const Grid& grid() const noexcept { return grid_; }
    const Boundary& boundary() const noexcept { return boundary_; }
    Scheme scheme() const noexcept { return scheme_; }
    std::size_t dim() const noexcept { return lagrangian_.dim(); }

    /// Operators feeding the Lagrangian: D_left^alpha and D_right^beta.
    const FracOperator& left_alpha() const noexcept { return left_alpha_; }
    const FracOperator& right_beta() const noexcept { return right_beta_; }
    /// Operators of the Euler-Lagrange equations: D_right^alpha and D_left^beta.
    const FracOperator& right_alpha() const noexcept { return right_alpha_; }
    const FracOperator& left_beta() const noexcept { return left_beta_; }

    /// Throws DomainError unless q lives on this grid with the right dimension.
    void check_path(const VectorPath& q) const;
    /// Throws DomainError unless q matches the boundary values within 1e-12 (relative).
    void check_boundary(const VectorPath& q) const;

private:
    Lagrangian lagrangian_;
    FracOrder alpha_;
    FracOrder beta_;
    Grid grid_;
    Boundary boundary_;
    Scheme scheme_;
    FracOperator left_alpha_;
    FracOperator right_beta_;
    FracOperator right_alpha_;
    FracOperator left_beta_;
};

/// d_l = D_left^alpha q and d_r = D_right^beta q, componentwise. A slot the
/// Lagrangian does not read is returned as zeros.
struct PathDerivatives {
    VectorPath left;
    VectorPath right;
};

PathDerivatives derivatives(const FracProblem& prob, const VectorPath& q);

/// L and its partials sampled along a path. L is masked where q, d_l or d_r
/// is. Each partial carries its own mask: with analytic partials it is valid
/// wherever its value is finite, otherwise it shares the mask of L.
struct PartialSignals {
    SampledSignal lagrangian;
    VectorPath dq;
    VectorPath dl;
    VectorPath dr;
};

PartialSignals partial_signals(const FracProblem& prob, const VectorPath& q, const PathDerivatives& d);
PartialSignals partial_signals(const FracProblem& prob, const VectorPath& q);

/// Trapezoid value of the functional over the nodes where the integrand is defined.
double evaluate_functional(const FracProblem& prob, const VectorPath& q);

/// dq L + D_right^alpha (d_l L) + D_left^beta (d_r L), valid on interior nodes only.
VectorPath el_residual(const FracProblem& prob, const VectorPath& q);

} // namespace fracvar
