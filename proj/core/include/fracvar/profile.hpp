#pragma once

#include <string>
#include <vector>

#include "fracvar/fracdiff.hpp"

namespace fracvar {

/// Which endpoint a power term is measured from: (t-a)^v or (b-t)^v.
enum class Anchor { Left, Right };

struct PowerTerm {
    double coeff;
    double exponent;
    Anchor anchor = Anchor::Left;
};

/// Finite sum of anchored powers on [a, b] with closed-form one-sided
/// Riemann-Liouville derivatives. Same-side terms use the power rule; a term
/// anchored at the opposite endpoint is expanded in a binomial series around the
/// operator's own anchor and differentiated term by term.
///
/// A profile may carry a second, equivalent expansion used for right-side
/// derivatives (Taylor series about b, say) to avoid the cross-side series.
class PowerProfile {
public:
    PowerProfile(double a, double b, std::vector<PowerTerm> terms);
    PowerProfile(double a, double b, std::vector<PowerTerm> left_terms, std::vector<PowerTerm> right_terms);

    /// (t-a)^v
    static PowerProfile power(double a, double b, double v);
    /// (b-t)^v
    static PowerProfile reflected_power(double a, double b, double v);
    /// (t-a)^v (b-t)/(b-a), zero at both ends for v > 0
    static PowerProfile vanishing_power(double a, double b, double v);
    static PowerProfile constant(double a, double b, double c);
    /// sin t via Taylor expansions about a (left) and b (right)
    static PowerProfile sine(double a, double b);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }

    double value(double t) const;
    /// Exact one-sided derivative (integral for negative order); NaN where the
    /// continuous value is singular.
    double derivative(FracOrder order, Side side, double t) const;

    SampledSignal sample(const Grid& grid) const;
    SampledSignal sample_derivative(FracOrder order, Side side, const Grid& grid) const;

    PowerProfile scaled(double c) const;

private:
    void require_grid(const Grid& grid) const;
    double anchor_limit(const std::vector<PowerTerm>& terms, double p, Side side) const;

    double a_;
    double b_;
    std::vector<PowerTerm> left_terms_;
    std::vector<PowerTerm> right_terms_;
};

/// Catalog parser: "pow:v", "rpow:v", "powz:v", "const:c", "sin".
PowerProfile parse_profile(const std::string& spec, double a, double b);

/// Derivative of order p of x^v (x the distance from the term's own anchor)
/// taken by the operator anchored at the other endpoint, at distance L - x from it.
double opposite_side_power_derivative(double p, double v, double length, double x);

} // namespace fracvar
