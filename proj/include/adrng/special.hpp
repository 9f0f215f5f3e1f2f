#pragma once

namespace adrng {

/// Complementary error function. Wraps the libm implementation; kept as a
/// named entry point so every statistical kernel shares one audited surface.
double erfc(double x);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
/// Requires a > 0, x >= 0 (throws std::domain_error otherwise).
/// Absolute error below 1e-10 over the battery's operating range.
double igamc(double a, double x);

/// Regularized lower incomplete gamma P(a, x) = 1 - Q(a, x).
double igam(double a, double x);

/// Standard normal CDF.
double normal_cdf(double x);

} // namespace adrng
