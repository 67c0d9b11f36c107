#include "fracvar/profile.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "fracvar/errors.hpp"
#include "fracvar/special.hpp"

namespace fracvar {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr long kMaxSeriesTerms = 20'000'000;

// Same-side derivative of order p of x^v at distance x >= 0 from the anchor.
double same_side(double p, double v, double x)
{
    if (p == 0.0)
        return std::pow(x, v);
    const double ratio = gamma_ratio(v + 1.0, v + 1.0 - p);
    if (ratio == 0.0)
        return 0.0;
    if (x > 0.0)
        return ratio * std::pow(x, v - p);
    if (v - p > 0.0)
        return 0.0;
    if (v - p == 0.0)
        return ratio;
    return kNaN;
}

double sum_terms(const std::vector<PowerTerm>& terms, double a, double b, double t)
{
    double s = 0.0;
    for (const auto& term : terms) {
        const double x = term.anchor == Anchor::Left ? t - a : b - t;
        s += term.coeff * std::pow(std::max(0.0, x), term.exponent);
    }
    return s;
}

std::vector<PowerTerm> taylor_sine(double centre, double length, Anchor anchor)
{
    // sin(centre + s) for the left expansion, sin(centre - r) for the right one.
    std::vector<PowerTerm> terms;
    double fact = 1.0;
    double mag = 1.0;
    for (int k = 0; k < 200; ++k) {
        if (k > 0) {
            fact *= k;
            mag *= length;
        }
        const double dk = std::sin(centre + k * std::numbers::pi / 2.0);
        const double sign = (anchor == Anchor::Right && k % 2 == 1) ? -1.0 : 1.0;
        const double c = sign * dk / fact;
        if (c != 0.0)
            terms.push_back({c, static_cast<double>(k), anchor});
        if (k > 4 && mag / fact < 1e-20)
            break;
    }
    return terms;
}

} // namespace

double opposite_side_power_derivative(double p, double v, double length, double x)
{
    if (p == 0.0)
        return std::pow(x, v);
    const double dist = length - x;  // distance from the operator's anchor
    if (p > 0.0 && p == std::nearbyint(p)) {
        // Classical derivative of the opposite sign convention.
        const double sign = static_cast<long long>(p) % 2 == 0 ? 1.0 : -1.0;
        return sign * same_side(p, v, x);
    }
    if (dist <= 0.0) {
        // Evaluated at the operator's own anchor endpoint.
        if (p < 0.0)
            return 0.0;
        return std::pow(length, v) == 0.0 ? 0.0 : kNaN;
    }
    if (x <= 0.0) {
        // Other endpoint: f(b) L^-p / Gamma(1-p) - int (theta)^-p f'(theta) / Gamma(1-p).
        if (v == 0.0)
            return std::pow(length, -p) * rgamma(1.0 - p);
        if (v - p > 0.0)
            return -p * std::pow(length, v - p) * rgamma(1.0 - p) / (v - p);
        return kNaN;
    }
    // x^v = L^v (1 - y)^v with y = dist / L; binomial series in y, then the
    // power rule on each (dist)^k.
    const double y = dist / length;
    double c = rgamma(1.0 - p);
    double yk = 1.0;
    double sum = c;
    for (long k = 1; k < kMaxSeriesTerms; ++k) {
        const double kd = static_cast<double>(k);
        c *= (kd - 1.0 - v) / (kd - p);
        yk *= y;
        const double term = c * yk;
        sum += term;
        if (c == 0.0)
            break;
        if (kd > v + 1.0) {
            const double tail = std::abs(term) * y / (1.0 - y);
            if (tail <= 1e-17 * std::abs(sum))
                break;
        }
    }
    return std::pow(length, v) * std::pow(dist, -p) * sum;
}

PowerProfile::PowerProfile(double a, double b, std::vector<PowerTerm> terms)
    : a_(a), b_(b), left_terms_(std::move(terms))
{
    if (!(b > a))
        throw DomainError("profile: need b > a");
    for (const auto& t : left_terms_)
        if (!(t.exponent > -1.0))
            throw DomainError("profile: exponents must exceed -1");
}

PowerProfile::PowerProfile(double a, double b, std::vector<PowerTerm> left_terms, std::vector<PowerTerm> right_terms)
    : PowerProfile(a, b, std::move(left_terms))
{
    right_terms_ = std::move(right_terms);
    for (const auto& t : right_terms_)
        if (!(t.exponent > -1.0))
            throw DomainError("profile: exponents must exceed -1");
}

PowerProfile PowerProfile::power(double a, double b, double v)
{
    return PowerProfile(a, b, {{1.0, v, Anchor::Left}});
}

PowerProfile PowerProfile::reflected_power(double a, double b, double v)
{
    return PowerProfile(a, b, {{1.0, v, Anchor::Right}});
}

PowerProfile PowerProfile::vanishing_power(double a, double b, double v)
{
    // (t-a)^v ((b-a) - (t-a)) / (b-a)
    return PowerProfile(a, b, {{1.0, v, Anchor::Left}, {-1.0 / (b - a), v + 1.0, Anchor::Left}});
}

PowerProfile PowerProfile::constant(double a, double b, double c)
{
    return PowerProfile(a, b, {{c, 0.0, Anchor::Left}});
}

PowerProfile PowerProfile::sine(double a, double b)
{
    return PowerProfile(a, b, taylor_sine(a, b - a, Anchor::Left), taylor_sine(b, b - a, Anchor::Right));
}

double PowerProfile::value(double t) const
{
    return sum_terms(left_terms_, a_, b_, t);
}

double PowerProfile::derivative(FracOrder order, Side side, double t) const
{
    const double p = order.value();
    const double length = b_ - a_;
    const auto& terms = (side == Side::Right && !right_terms_.empty()) ? right_terms_ : left_terms_;
    const bool at_anchor = side == Side::Left ? t <= a_ : t >= b_;
    if (at_anchor && p > 0.0 && !order.is_integer())
        return anchor_limit(terms, p, side);
    double s = 0.0;
    for (const auto& term : terms) {
        const bool same = (term.anchor == Anchor::Left) == (side == Side::Left);
        const double x = std::max(0.0, term.anchor == Anchor::Left ? t - a_ : b_ - t);
        const double d = same ? same_side(p, term.exponent, x)
                              : opposite_side_power_derivative(p, term.exponent, length, x);
        s += term.coeff * d;
    }
    return s;
}

double PowerProfile::anchor_limit(const std::vector<PowerTerm>& terms, double p, Side side) const
{
    // Every term contributes f_i(end) (dist)^-p / Gamma(1-p) plus a regular part.
    // The singular parts sum to f(end) (dist)^-p / Gamma(1-p), so the limit is
    // finite only when the profile vanishes at the anchor.
    const double length = b_ - a_;
    const double end = side == Side::Left ? a_ : b_;
    double scale = 0.0;
    for (const auto& term : terms)
        scale += std::abs(term.coeff) * std::max(1.0, std::pow(length, term.exponent));
    if (std::abs(sum_terms(terms, a_, b_, end)) > 1e-13 * scale)
        return kNaN;
    double s = 0.0;
    for (const auto& term : terms) {
        const bool same = (term.anchor == Anchor::Left) == (side == Side::Left);
        if (!same) {
            // Regular part of the opposite-side series vanishes like (dist)^(1-p).
            if (p > 1.0)
                return kNaN;
            continue;
        }
        if (term.exponent == 0.0 || term.exponent > p)
            continue;
        if (term.exponent == p) {
            s += term.coeff * gamma_ratio(p + 1.0, 1.0);
            continue;
        }
        return kNaN;
    }
    return s;
}

void PowerProfile::require_grid(const Grid& grid) const
{
    if (grid.a() != a_ || grid.b() != b_)
        throw DomainError("profile: grid interval differs from the profile interval");
}

SampledSignal PowerProfile::sample(const Grid& grid) const
{
    require_grid(grid);
    std::vector<double> v(grid.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = value(grid.node(k));
    return SampledSignal(grid, std::move(v));
}

SampledSignal PowerProfile::sample_derivative(FracOrder order, Side side, const Grid& grid) const
{
    require_grid(grid);
    std::vector<double> v(grid.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = derivative(order, side, grid.node(k));
    return SampledSignal(grid, std::move(v));
}

PowerProfile PowerProfile::scaled(double c) const
{
    auto l = left_terms_;
    auto r = right_terms_;
    for (auto& t : l)
        t.coeff *= c;
    for (auto& t : r)
        t.coeff *= c;
    return PowerProfile(a_, b_, std::move(l), std::move(r));
}

PowerProfile parse_profile(const std::string& spec, double a, double b)
{
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    double arg = 0.0;
    const bool has_arg = colon != std::string::npos;
    if (has_arg) {
        try {
            std::size_t used = 0;
            arg = std::stod(spec.substr(colon + 1), &used);
            if (used != spec.size() - colon - 1)
                throw DomainError("trailing characters");
        } catch (const std::exception&) {
            throw DomainError("profile '" + spec + "': cannot parse the numeric argument");
        }
    }
    if (kind == "sin" && !has_arg)
        return PowerProfile::sine(a, b);
    if (has_arg) {
        if (kind == "pow")
            return PowerProfile::power(a, b, arg);
        if (kind == "rpow")
            return PowerProfile::reflected_power(a, b, arg);
        if (kind == "powz")
            return PowerProfile::vanishing_power(a, b, arg);
        if (kind == "const")
            return PowerProfile::constant(a, b, arg);
    }
    throw DomainError("unknown profile '" + spec + "' (expected pow:v, rpow:v, powz:v, const:c or sin)");
}

} // namespace fracvar
