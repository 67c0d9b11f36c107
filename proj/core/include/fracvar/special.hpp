#pragma once

namespace fracvar {

/// 1/Gamma(x), with the value 0 at the poles x = 0, -1, -2, ...
double rgamma(double x);

/// Gamma(x)/Gamma(y) without intermediate overflow; 0 when y is a pole and x is not.
double gamma_ratio(double x, double y);

/// True when x is a nonpositive integer (a pole of Gamma).
bool is_gamma_pole(double x) noexcept;

} // namespace fracvar
