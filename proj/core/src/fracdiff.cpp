#include "fracvar/fracdiff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "fracvar/csv.hpp"
#include "fracvar/errors.hpp"
#include "fracvar/special.hpp"

namespace fracvar {

namespace {

// (m+1)^e - m^e without cancellation for large m.
double forward_power_difference(double m, double e)
{
    if (m == 0.0)
        return 1.0;
    return std::pow(m, e) * std::expm1(e * std::log1p(1.0 / m));
}

std::size_t last_nonzero(const std::vector<double>& v)
{
    for (std::size_t m = v.size(); m-- > 0;)
        if (v[m] != 0.0)
            return m;
    return 0;
}

} // namespace

FracOrder::FracOrder(double value) : value_(value)
{
    if (!std::isfinite(value))
        throw DomainError("order must be finite");
}

bool FracOrder::is_integer() const noexcept
{
    return value_ == std::nearbyint(value_);
}

const char* to_string(Side s) noexcept
{
    return s == Side::Left ? "left" : "right";
}

const char* to_string(Scheme s) noexcept
{
    return s == Scheme::GL ? "gl" : "l1";
}

std::vector<double> gl_weights(FracOrder order, std::size_t n)
{
    std::vector<double> w(n + 1);
    w[0] = 1.0;
    const double p1 = order.value() + 1.0;
    for (std::size_t j = 1; j <= n; ++j)
        w[j] = w[j - 1] * (1.0 - p1 / static_cast<double>(j));
    return w;
}

FracOperator::FracOperator(FracOrder order, Side side, Scheme scheme, const Grid& grid)
    : grid_(grid), order_(order), side_(side), scheme_(scheme)
{
    const double p = order.value();
    const double h = grid.step();
    const std::size_t n = grid.intervals();

    if (scheme_ == Scheme::L1 && (p == 0.0 || p == 1.0))
        scheme_ = Scheme::GL;
    if (scheme_ == Scheme::L1 && p > 1.0)
        throw DomainError("L1 scheme is implemented for orders below 1 only (got " + std::to_string(p) + ")");

    if (scheme_ == Scheme::GL) {
        toeplitz_ = gl_weights(order, n);
        scale_ = std::pow(h, -p);
    } else if (p > 0.0) {
        // Piecewise-linear interpolant inside the n = 1 kernel integral, then
        // differentiated exactly: a Caputo-type sum plus the f(a) (t-a)^-p term.
        const double e = 1.0 - p;
        toeplitz_.assign(n + 1, 0.0);
        anchor_.assign(n + 1, 0.0);
        std::vector<double> b(n + 1);
        for (std::size_t m = 0; m <= n; ++m)
            b[m] = forward_power_difference(static_cast<double>(m), e);
        toeplitz_[0] = 1.0;
        for (std::size_t m = 1; m <= n; ++m)
            toeplitz_[m] = b[m] - b[m - 1];
        anchor_[0] = 1.0;  // row 0 is masked whenever f(a) != 0
        for (std::size_t k = 1; k <= n; ++k)
            anchor_[k] = e * std::pow(static_cast<double>(k), -p) - b[k - 1];
        scale_ = std::pow(h, -p) * rgamma(2.0 - p);
    } else {
        // Fractional integral of order q: product trapezoid weights.
        const double q = -p;
        const double e = q + 1.0;
        toeplitz_.assign(n + 1, 0.0);
        anchor_.assign(n + 1, 0.0);
        toeplitz_[0] = 1.0;
        for (std::size_t m = 1; m <= n; ++m) {
            const double md = static_cast<double>(m);
            toeplitz_[m] = std::pow(md + 1.0, e) - 2.0 * std::pow(md, e) + std::pow(md - 1.0, e);
        }
        for (std::size_t k = 1; k <= n; ++k) {
            const double kd = static_cast<double>(k);
            anchor_[k] = std::pow(kd - 1.0, e) - (kd - q - 1.0) * std::pow(kd, q);
        }
        scale_ = std::pow(h, q) * rgamma(q + 2.0);
    }
    band_ = last_nonzero(toeplitz_);
}

double FracOperator::entry(std::size_t row, std::size_t col) const noexcept
{
    const std::size_t n = grid_.intervals();
    if (side_ == Side::Left) {
        if (col > row)
            return 0.0;
        if (!anchor_.empty() && col == 0)
            return scale_ * anchor_[row];
        return scale_ * toeplitz_[row - col];
    }
    if (col < row)
        return 0.0;
    if (!anchor_.empty() && col == n)
        return scale_ * anchor_[n - row];
    return scale_ * toeplitz_[col - row];
}

std::vector<double> FracOperator::dense() const
{
    const std::size_t s = grid_.size();
    std::vector<double> m(s * s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j)
            m[i * s + j] = entry(i, j);
    return m;
}

void FracOperator::write_csv(std::ostream& os) const
{
    const std::size_t s = grid_.size();
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
            if (j)
                os << ',';
            os << format_double(entry(i, j));
        }
        os << '\n';
    }
}

double FracOperator::row_sum(std::span<const double> f, std::size_t k) const noexcept
{
    const std::size_t n = grid_.intervals();
    double s = 0.0;
    if (side_ == Side::Left) {
        if (anchor_.empty()) {
            const std::size_t top = std::min(k, band_);
            for (std::size_t m = 0; m <= top; ++m)
                s += toeplitz_[m] * f[k - m];
        } else if (k == 0) {
            s = anchor_[0] * f[0];
        } else {
            const std::size_t top = std::min(k - 1, band_);
            for (std::size_t m = 0; m <= top; ++m)
                s += toeplitz_[m] * f[k - m];
            s += anchor_[k] * f[0];
        }
    } else {
        const std::size_t reach = n - k;
        if (anchor_.empty()) {
            const std::size_t top = std::min(reach, band_);
            for (std::size_t m = 0; m <= top; ++m)
                s += toeplitz_[m] * f[k + m];
        } else if (reach == 0) {
            s = anchor_[0] * f[n];
        } else {
            const std::size_t top = std::min(reach - 1, band_);
            for (std::size_t m = 0; m <= top; ++m)
                s += toeplitz_[m] * f[k + m];
            s += anchor_[reach] * f[n];
        }
    }
    return scale_ * s;
}

void FracOperator::apply_values(std::span<const double> in, std::span<double> out) const
{
    const std::size_t s = grid_.size();
    if (in.size() != s || out.size() != s)
        throw DomainError("operator: expected " + std::to_string(s) + " values");
    for (std::size_t k = 0; k < s; ++k)
        out[k] = row_sum(in, k);
}

SampledSignal FracOperator::apply(const SampledSignal& sig) const
{
    require_same_grid(grid_, sig.grid(), "operator apply");
    const std::size_t s = grid_.size();
    const std::size_t n = grid_.intervals();

    // bad[j] = number of invalid nodes among 0..j-1
    std::vector<std::size_t> bad(s + 1, 0);
    for (std::size_t j = 0; j < s; ++j)
        bad[j + 1] = bad[j] + (sig.valid(j) ? 0 : 1);
    auto invalid_in = [&](std::size_t lo, std::size_t hi) { return bad[hi + 1] - bad[lo] > 0; };

    std::vector<bool> valid(s, true);
    for (std::size_t k = 0; k < s; ++k) {
        if (side_ == Side::Left) {
            const std::size_t lo = k - std::min(k, band_);
            valid[k] = !invalid_in(lo, k) && (anchor_.empty() || sig.valid(0));
        } else {
            const std::size_t hi = std::min(n, k + band_);
            valid[k] = !invalid_in(k, hi) && (anchor_.empty() || sig.valid(n));
        }
    }

    const double p = order_.value();
    if (p > 0.0) {
        if (order_.is_integer()) {
            const auto m = std::min(s, static_cast<std::size_t>(p));
            for (std::size_t r = 0; r < m; ++r)
                valid[side_ == Side::Left ? r : n - r] = false;
        } else {
            // The endpoint row is kept only when the signal vanishes there (up to
            // rounding relative to its own size).
            const std::size_t end = side_ == Side::Left ? 0 : n;
            const double zero_tol = 64.0 * std::numeric_limits<double>::epsilon() * max_abs(sig);
            if (!sig.valid(end) || std::abs(sig[end]) > zero_tol)
                valid[end] = false;
        }
    }

    if (std::none_of(valid.begin(), valid.end(), [](bool v) { return v; }))
        throw DomainError(std::string("operator apply: masked input nodes on the ") + to_string(side_) +
                          " side leave no computable row");

    std::vector<double> out(s, std::numeric_limits<double>::quiet_NaN());
    const auto f = sig.values();
    for (std::size_t k = 0; k < s; ++k)
        if (valid[k])
            out[k] = row_sum(f, k);
    return SampledSignal(grid_, std::move(out), std::move(valid));
}

FracOperator build_operator(FracOrder order, Side side, Scheme scheme, const Grid& grid)
{
    return FracOperator(order, side, scheme, grid);
}

SampledSignal apply(const FracOperator& op, const SampledSignal& s)
{
    return op.apply(s);
}

double power_rule_exact(double p, double v, double a, double t)
{
    if (!(v > -1.0))
        throw DomainError("power rule: exponent must exceed -1");
    if (!(t > a))
        throw DomainError("power rule: need t > a");
    return gamma_ratio(v + 1.0, v + 1.0 - p) * std::pow(t - a, v - p);
}

double integration_by_parts_defect(const SampledSignal& f, const SampledSignal& g, FracOrder p, Scheme scheme)
{
    require_same_grid(f.grid(), g.grid(), "integration by parts");
    const Grid& grid = f.grid();
    const std::size_t n = grid.intervals();
    const double scale_f = std::max(1.0, max_abs(f));
    const double scale_g = std::max(1.0, max_abs(g));
    if (!f.valid(0) || std::abs(f[0]) > 1e-12 * scale_f)
        throw DomainError("integration by parts: need f(a) = 0");
    if (!g.valid(n) || std::abs(g[n]) > 1e-12 * scale_g)
        throw DomainError("integration by parts: need g(b) = 0");

    const FracOperator left(p, Side::Left, scheme, grid);
    const FracOperator right(p, Side::Right, scheme, grid);
    const double lhs = integrate(left.apply(f) * g).value;
    const double rhs = integrate(f * right.apply(g)).value;
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

SampledSignal left_kernel(FracOrder order, const Grid& grid)
{
    const double p = order.value();
    if (!order.is_variational())
        throw DomainError("left_kernel: order must lie in (0, 1]");
    // Column 0 of the order -p GL operator, rescaled: Gamma(p) h^(p-1) w^(-p)[k].
    const auto w = gl_weights(FracOrder(-p), grid.intervals());
    const double c = std::tgamma(p) * std::pow(grid.step(), p - 1.0);
    std::vector<double> v(w.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = c * w[k];
    return SampledSignal(grid, std::move(v));
}

SampledSignal right_kernel(FracOrder order, const Grid& grid)
{
    const auto left = left_kernel(order, grid);
    std::vector<double> v(left.values().rbegin(), left.values().rend());
    return SampledSignal(grid, std::move(v));
}

} // namespace fracvar
