#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace fracvar {

/// Partial derivatives of L with respect to q, the left-derivative slot and
/// the right-derivative slot.
struct Partials {
    std::vector<double> dq;
    std::vector<double> dl;
    std::vector<double> dr;
};

/// Writes one gradient block (length n) into `out`.
using LagrangianGradient = std::function<void(double t, std::span<const double> q, std::span<const double> dl,
                                              std::span<const double> dr, std::span<double> out)>;

struct AnalyticPartials {
    LagrangianGradient dq;
    LagrangianGradient dl;
    LagrangianGradient dr;
};

struct LagrangianOptions {
    double fd_step = 1e-6;
    /// Slots the Lagrangian reads. An unused slot is never differentiated,
    /// which spares the operator work and keeps its masks out of the way.
    bool uses_left = true;
    bool uses_right = true;
    /// Probe box for the construction-time self-check.
    double probe_lo = -1.0;
    double probe_hi = 1.0;
    std::uint64_t probe_seed = 0x5eed;
};

/// L(t, q, d_l, d_r) with q, d_l, d_r in R^n.
class Lagrangian {
public:
    using Eval = std::function<double(double t, std::span<const double> q, std::span<const double> dl,
                                      std::span<const double> dr)>;
    using Gradient = LagrangianGradient;

    using Analytic = AnalyticPartials;
    using Options = LagrangianOptions;

    /// With analytic partials, compares them against central differences at 10
    /// probe points (tolerance 1e-4 relative) and throws DomainError on mismatch.
    Lagrangian(std::size_t n, Eval eval, std::optional<Analytic> analytic = std::nullopt, Options options = {});
    Lagrangian(std::size_t n, Eval eval, Options options) : Lagrangian(n, std::move(eval), std::nullopt, options) {}

    std::size_t dim() const noexcept { return n_; }
    const Options& options() const noexcept { return options_; }
    bool has_analytic() const noexcept { return analytic_.has_value(); }

    double operator()(double t, std::span<const double> q, std::span<const double> dl,
                      std::span<const double> dr) const;

    /// Analytic partials when available, central differences otherwise.
    Partials partials(double t, std::span<const double> q, std::span<const double> dl,
                      std::span<const double> dr) const;
    /// Central differences with per-coordinate step fd_step (1 + |x_i|).
    /// Throws NumericalError naming the coordinate when L is not finite nearby.
    Partials fd_partials(double t, std::span<const double> q, std::span<const double> dl,
                         std::span<const double> dr) const;

private:
    void self_check() const;

    std::size_t n_;
    Eval eval_;
    std::optional<Analytic> analytic_;
    Options options_;
};

} // namespace fracvar
