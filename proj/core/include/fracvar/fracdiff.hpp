#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "fracvar/grid.hpp"
#include "fracvar/signal.hpp"

namespace fracvar {

/// Order of a Riemann-Liouville operator. Positive values are derivatives,
/// negative values fractional integrals of order |value|, zero the identity.
class FracOrder {
public:
    explicit FracOrder(double value);

    double value() const noexcept { return value_; }
    bool is_integer() const noexcept;
    bool is_derivative() const noexcept { return value_ > 0.0; }
    /// Order usable in a variational problem: 0 < value <= 1.
    bool is_variational() const noexcept { return value_ > 0.0 && value_ <= 1.0; }

    friend bool operator==(const FracOrder&, const FracOrder&) = default;

private:
    double value_;
};

/// Left operators read [a, t]; right operators read [t, b].
enum class Side { Left, Right };

/// GL: Grunwald-Letnikov binomial weights. L1: product integration of the
/// power kernel against the piecewise-linear interpolant.
enum class Scheme { GL, L1 };

const char* to_string(Side s) noexcept;
const char* to_string(Scheme s) noexcept;

/// Grunwald-Letnikov weights w[0..n]: w[0] = 1, w[j] = w[j-1] (1 - (order+1)/j).
std::vector<double> gl_weights(FracOrder order, std::size_t n);

/// Discrete left or right Riemann-Liouville operator on a uniform grid.
///
/// Entry (k, j) of the (N+1)x(N+1) matrix is scale * T[|k-j|] on the readable
/// side of the diagonal, except for the column at the anchor endpoint (j = 0 for
/// Left, j = N for Right), which holds scale * anchor[|k-j|] when the scheme
/// needs a non-Toeplitz boundary column. Entries on the other side are zero.
class FracOperator {
public:
    FracOperator(FracOrder order, Side side, Scheme scheme, const Grid& grid);

    const Grid& grid() const noexcept { return grid_; }
    FracOrder order() const noexcept { return order_; }
    Side side() const noexcept { return side_; }
    /// Scheme actually used (order 1 with L1 is routed to GL).
    Scheme scheme() const noexcept { return scheme_; }

    double entry(std::size_t row, std::size_t col) const noexcept;
    /// Row-major (N+1)^2 materialization.
    std::vector<double> dense() const;
    void write_csv(std::ostream& os) const;

    /// Matrix-vector product with mask propagation. A row is invalid when it
    /// reads an invalid node, and at the anchor endpoint when the continuous
    /// derivative is singular there. Throws DomainError on grid mismatch or when
    /// the input masks leave no computable row.
    SampledSignal apply(const SampledSignal& s) const;

    /// Plain product on raw values (no masks, no endpoint rule).
    void apply_values(std::span<const double> in, std::span<double> out) const;

private:
    double row_sum(std::span<const double> f, std::size_t k) const noexcept;

    Grid grid_;
    FracOrder order_;
    Side side_;
    Scheme scheme_;
    double scale_ = 1.0;
    std::vector<double> toeplitz_;
    std::vector<double> anchor_;  // empty: anchor column follows the Toeplitz pattern
    std::size_t band_ = 0;        // largest m with toeplitz_[m] != 0
};

FracOperator build_operator(FracOrder order, Side side, Scheme scheme, const Grid& grid);
SampledSignal apply(const FracOperator& op, const SampledSignal& s);

/// Left derivative of order p of (t-a)^v:
/// Gamma(v+1)/Gamma(v+1-p) (t-a)^(v-p), zero when v+1-p is a pole of Gamma.
/// Throws DomainError for v <= -1 or t <= a.
double power_rule_exact(double p, double v, double a, double t);

/// |int (D_left^p f) g - int f (D_right^p g)| / (1 + |int (D_left^p f) g|).
/// Requires f(a) = 0 and g(b) = 0 on a common grid.
double integration_by_parts_defect(const SampledSignal& f, const SampledSignal& g, FracOrder p,
                                   Scheme scheme = Scheme::GL);

/// Discrete counterpart of (t-a)^(order-1): the vector annihilated by the left
/// operator on every row but the first, normalized to match the power away from a.
/// Only GL is supported; requires 0 < order <= 1.
SampledSignal left_kernel(FracOrder order, const Grid& grid);

/// Mirror image of left_kernel, approximating (b-t)^(order-1).
SampledSignal right_kernel(FracOrder order, const Grid& grid);

} // namespace fracvar
