#include "fracvar/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "fracvar/errors.hpp"

namespace fracvar {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<bool> finite_mask(const std::vector<double>& v)
{
    std::vector<bool> m(v.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        m[k] = std::isfinite(v[k]);
    return m;
}

template <class Op>
SampledSignal combine(const SampledSignal& x, const SampledSignal& y, Op op, const char* what)
{
    require_same_grid(x.grid(), y.grid(), what);
    std::vector<double> v(x.size());
    std::vector<bool> m(x.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        m[k] = x.valid(k) && y.valid(k);
        v[k] = m[k] ? op(x[k], y[k]) : kNaN;
    }
    return SampledSignal(x.grid(), std::move(v), std::move(m));
}

} // namespace

SampledSignal::SampledSignal(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values))
{
    if (values_.size() != grid_.size())
        throw DomainError("signal: expected " + std::to_string(grid_.size()) + " values, got " +
                          std::to_string(values_.size()));
    valid_ = finite_mask(values_);
    for (std::size_t k = 0; k < values_.size(); ++k)
        if (!valid_[k])
            values_[k] = kNaN;
}

SampledSignal::SampledSignal(Grid grid, std::vector<double> values, std::vector<bool> valid)
    : grid_(grid), values_(std::move(values)), valid_(std::move(valid))
{
    if (values_.size() != grid_.size() || valid_.size() != grid_.size())
        throw DomainError("signal: values and mask must have " + std::to_string(grid_.size()) + " entries");
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (valid_[k] && !std::isfinite(values_[k]))
            valid_[k] = false;
        if (!valid_[k])
            values_[k] = kNaN;
    }
}

SampledSignal SampledSignal::constant(const Grid& grid, double value)
{
    return SampledSignal(grid, std::vector<double>(grid.size(), value));
}

std::size_t SampledSignal::valid_count() const noexcept
{
    return static_cast<std::size_t>(std::count(valid_.begin(), valid_.end(), true));
}

VectorPath::VectorPath(std::vector<SampledSignal> components)
    : components_(std::move(components))
{
    if (components_.empty())
        throw DomainError("path: need at least one component");
    for (const auto& c : components_)
        require_same_grid(components_.front().grid(), c.grid(), "path components");
}

std::vector<double> VectorPath::at(std::size_t k) const
{
    std::vector<double> x(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        x[i] = components_[i][k];
    return x;
}

bool VectorPath::valid_at(std::size_t k) const noexcept
{
    return std::all_of(components_.begin(), components_.end(),
                       [k](const SampledSignal& c) { return c.valid(k); });
}

SampledSignal sample(const std::function<double(double)>& f, const Grid& grid)
{
    std::vector<double> v(grid.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = f(grid.node(k));
    return SampledSignal(grid, std::move(v));
}

Integral integrate(const SampledSignal& s)
{
    if (s.valid_count() < 2)
        throw DomainError("integrate: need at least 2 valid nodes");
    const Grid& g = s.grid();
    double sum = 0.0;
    std::size_t panels = 0;
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
        if (s.valid(k) && s.valid(k + 1)) {
            sum += 0.5 * (s[k] + s[k + 1]);
            ++panels;
        }
    }
    const double n = static_cast<double>(g.intervals());
    return {sum * g.length() / n, static_cast<double>(g.intervals() - panels) * g.length() / n};
}

SampledSignal operator+(const SampledSignal& x, const SampledSignal& y)
{
    return combine(x, y, [](double u, double v) { return u + v; }, "signal +");
}

SampledSignal operator-(const SampledSignal& x, const SampledSignal& y)
{
    return combine(x, y, [](double u, double v) { return u - v; }, "signal -");
}

SampledSignal operator*(const SampledSignal& x, const SampledSignal& y)
{
    return combine(x, y, [](double u, double v) { return u * v; }, "signal *");
}

SampledSignal operator*(double c, const SampledSignal& x)
{
    std::vector<double> v(x.values().begin(), x.values().end());
    for (auto& e : v)
        e *= c;
    return SampledSignal(x.grid(), std::move(v), x.mask());
}

SampledSignal operator-(const SampledSignal& x)
{
    return -1.0 * x;
}

double max_abs(const SampledSignal& s, const Window& w)
{
    double m = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k)
        if (s.valid(k) && w.contains(s.grid().node(k)))
            m = std::max(m, std::abs(s[k]));
    return m;
}

double max_abs(const SampledSignal& s)
{
    return max_abs(s, Window::whole(s.grid()));
}

double max_abs_interior(const SampledSignal& s, const Window& w)
{
    double m = 0.0;
    for (std::size_t k = 1; k + 1 < s.size(); ++k)
        if (s.valid(k) && w.contains(s.grid().node(k)))
            m = std::max(m, std::abs(s[k]));
    return m;
}

void require_same_grid(const Grid& x, const Grid& y, const char* what)
{
    if (!(x == y))
        throw DomainError(std::string(what) + ": grid mismatch");
}

} // namespace fracvar
