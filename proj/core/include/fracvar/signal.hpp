#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fracvar/grid.hpp"

namespace fracvar {

/// Values of a scalar function at the nodes of a Grid. Nodes where the value is
/// undefined (non-finite samples, endpoint singularities) are masked; masked
/// entries hold NaN and are never read by quadrature or norms.
class SampledSignal {
public:
    /// Validity is derived from finiteness of each value.
    SampledSignal(Grid grid, std::vector<double> values);
    /// Explicit mask; entries flagged invalid are overwritten with NaN.
    SampledSignal(Grid grid, std::vector<double> values, std::vector<bool> valid);

    static SampledSignal constant(const Grid& grid, double value);
    static SampledSignal zeros(const Grid& grid) { return constant(grid, 0.0); }

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    const std::vector<bool>& mask() const noexcept { return valid_; }

    double operator[](std::size_t k) const noexcept { return values_[k]; }
    bool valid(std::size_t k) const noexcept { return valid_[k]; }
    std::size_t valid_count() const noexcept;
    bool fully_valid() const noexcept { return valid_count() == size(); }

private:
    Grid grid_;
    std::vector<double> values_;
    std::vector<bool> valid_;
};

/// n-component trajectory on one grid.
class VectorPath {
public:
    explicit VectorPath(std::vector<SampledSignal> components);

    const Grid& grid() const noexcept { return components_.front().grid(); }
    std::size_t dim() const noexcept { return components_.size(); }
    std::size_t size() const noexcept { return grid().size(); }

    const SampledSignal& operator[](std::size_t i) const noexcept { return components_[i]; }
    const std::vector<SampledSignal>& components() const noexcept { return components_; }

    /// State vector at node k (NaN for masked components).
    std::vector<double> at(std::size_t k) const;
    bool valid_at(std::size_t k) const noexcept;

private:
    std::vector<SampledSignal> components_;
};

/// values[k] = f(node(k)); non-finite results mask node k.
SampledSignal sample(const std::function<double(double)>& f, const Grid& grid);

struct Integral {
    double value;
    /// Length of [a, b] not covered by the panels that were summed.
    double truncated_width;
};

/// Composite trapezoid over panels whose two nodes are both valid.
/// Throws DomainError with fewer than two valid nodes.
Integral integrate(const SampledSignal& s);

/// Pointwise arithmetic; the result mask is the intersection of the operand masks.
SampledSignal operator+(const SampledSignal& x, const SampledSignal& y);
SampledSignal operator-(const SampledSignal& x, const SampledSignal& y);
SampledSignal operator*(const SampledSignal& x, const SampledSignal& y);
SampledSignal operator*(double c, const SampledSignal& x);
SampledSignal operator-(const SampledSignal& x);

/// Largest |value| over valid nodes inside the window; 0 when none qualify.
double max_abs(const SampledSignal& s, const Window& w);
double max_abs(const SampledSignal& s);
/// As max_abs but over interior nodes 1..N-1 only.
double max_abs_interior(const SampledSignal& s, const Window& w);

/// Throws DomainError when the two grids differ.
void require_same_grid(const Grid& x, const Grid& y, const char* what);

} // namespace fracvar
