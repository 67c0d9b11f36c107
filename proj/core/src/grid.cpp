#include "fracvar/grid.hpp"

#include <cmath>
#include <string>

#include "fracvar/errors.hpp"

namespace fracvar {

Grid::Grid(double a, double b, std::size_t intervals)
    : a_(a), b_(b), n_(intervals), h_(0.0)
{
    if (!std::isfinite(a) || !std::isfinite(b) || !(b > a))
        throw DomainError("grid: need finite endpoints with b > a, got [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
    if (intervals < 2)
        throw DomainError("grid: need at least 2 subintervals, got " + std::to_string(intervals));
    h_ = (b_ - a_) / static_cast<double>(n_);
}

std::vector<double> Grid::nodes() const
{
    std::vector<double> t(size());
    for (std::size_t k = 0; k < t.size(); ++k)
        t[k] = node(k);
    return t;
}

Grid make_grid(double a, double b, std::int64_t intervals)
{
    if (intervals < 2)
        throw DomainError("grid: need at least 2 subintervals, got " + std::to_string(intervals));
    return Grid(a, b, static_cast<std::size_t>(intervals));
}

Window Window::trimmed(const Grid& g, double fraction)
{
    if (!(fraction >= 0.0 && fraction < 0.5))
        throw DomainError("trim fraction must lie in [0, 0.5)");
    const double d = fraction * g.length();
    return {g.a() + d, g.b() - d};
}

Window Window::trimmed_left(const Grid& g, double fraction)
{
    if (!(fraction >= 0.0 && fraction < 1.0))
        throw DomainError("trim fraction must lie in [0, 1)");
    return {g.a() + fraction * g.length(), g.b()};
}

} // namespace fracvar
