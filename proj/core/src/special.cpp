#include "fracvar/special.hpp"

#include <cmath>
#include <limits>

#include "fracvar/errors.hpp"

namespace fracvar {

bool is_gamma_pole(double x) noexcept
{
    return x <= 0.0 && x == std::nearbyint(x);
}

double rgamma(double x)
{
    if (std::isnan(x))
        return x;
    if (is_gamma_pole(x))
        return 0.0;
    if (x > 171.0)
        return std::exp(-std::lgamma(x));
    return 1.0 / std::tgamma(x);
}

double gamma_ratio(double x, double y)
{
    if (is_gamma_pole(x))
        throw DomainError("gamma_ratio: numerator argument is a pole of Gamma");
    if (is_gamma_pole(y))
        return 0.0;
    if (std::abs(x) < 150.0 && std::abs(y) < 150.0)
        return std::tgamma(x) * rgamma(y);
    // Large arguments: combine log-magnitudes and track the signs separately.
    const double sx = (x > 0.0 || static_cast<long long>(std::floor(x)) % 2 == 0) ? 1.0 : -1.0;
    const double sy = (y > 0.0 || static_cast<long long>(std::floor(y)) % 2 == 0) ? 1.0 : -1.0;
    return sx * sy * std::exp(std::lgamma(x) - std::lgamma(y));
}

} // namespace fracvar
