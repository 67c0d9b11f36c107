#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fracvar/errors.hpp"
#include "fracvar/problem.hpp"

namespace fracvar {

struct SolverConfig {
    /// Target for the sup-norm of the interior residual; defaults to 1e-8 N.
    std::optional<double> tol;
    int max_iter = 100;
    /// Initial Levenberg parameter.
    double damping = 1e-3;

    /// Throws DomainError unless tol > 0, max_iter >= 1 and damping >= 0.
    void validate() const;
    double resolved_tol(const Grid& grid) const;
};

struct TraceEntry {
    int iteration;
    double residual_norm;
    double damping;
};

struct SolveResult {
    VectorPath path;
    std::vector<TraceEntry> trace;
    double residual_norm;
    int iterations;
};

/// Raised after max_iter iterations without reaching the tolerance.
class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, double residual_norm, int iterations, std::vector<TraceEntry> trace)
        : NumericalError(what), residual_norm_(residual_norm), iterations_(iterations), trace_(std::move(trace))
    {
    }
    double residual_norm() const noexcept { return residual_norm_; }
    int iterations() const noexcept { return iterations_; }
    const std::vector<TraceEntry>& trace() const noexcept { return trace_; }

private:
    double residual_norm_;
    int iterations_;
    std::vector<TraceEntry> trace_;
};

/// Raised when the damped normal equations cannot be factorized.
class SingularSystemError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Sup-norm of the interior Euler-Lagrange residual (masked interior nodes count as infinite).
double residual_norm(const FracProblem& prob, const VectorPath& q);

/// Gauss-Newton with Levenberg damping on the interior Euler-Lagrange residual.
/// Unknowns are the interior node values of every component; boundary nodes are
/// copied from q0 unchanged. The Jacobian is built by forward differences.
SolveResult solve_extremal(const FracProblem& prob, const VectorPath& q0, const SolverConfig& cfg = {});

} // namespace fracvar
