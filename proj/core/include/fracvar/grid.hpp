#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fracvar {

/// Uniform partition a = t_0 < t_1 < ... < t_N = b.
class Grid {
public:
    /// Throws DomainError unless b > a (both finite) and intervals >= 2.
    Grid(double a, double b, std::size_t intervals);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    std::size_t intervals() const noexcept { return n_; }
    std::size_t size() const noexcept { return n_ + 1; }
    double step() const noexcept { return h_; }
    double length() const noexcept { return b_ - a_; }

    /// t_k = a + k h; the last node is b exactly.
    double node(std::size_t k) const noexcept { return k == n_ ? b_ : a_ + static_cast<double>(k) * h_; }
    std::vector<double> nodes() const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    double a_;
    double b_;
    std::size_t n_;
    double h_;
};

/// Checked factory accepting a signed interval count (negative or < 2 is a DomainError).
Grid make_grid(double a, double b, std::int64_t intervals);

/// Closed sub-interval [lo, hi] of the time axis used to restrict reported defects.
struct Window {
    double lo;
    double hi;

    /// Inclusive, with a relative slack of 1e-12 so nodes on the boundary count.
    bool contains(double t) const noexcept
    {
        const double slack = 1e-12 * (1.0 + (hi > lo ? hi - lo : 0.0));
        return t >= lo - slack && t <= hi + slack;
    }

    static Window whole(const Grid& g) { return {g.a(), g.b()}; }
    /// Drops `fraction` of the interval length at each end.
    static Window trimmed(const Grid& g, double fraction);
    /// Drops `fraction` at the left end only: [a + f (b-a), b].
    static Window trimmed_left(const Grid& g, double fraction);
};

} // namespace fracvar
