#pragma once

///
/// \file special_functions.hpp
///
/// Log-gamma, digamma and polygamma functions on (0, inf) in binary64.
///
/// Every function shifts its argument above kAsymptoticThreshold with the
/// upward recurrence and then sums the Stirling-type asymptotic series with
/// Bernoulli coefficients through order x^-14. The *_difference variants
/// evaluate f(x + t) - f(x + s) without forming the two values separately,
/// so the result keeps full relative accuracy when t - s is small or x is
/// large.
///

namespace egp {

inline constexpr double kAsymptoticThreshold = 10.0;
inline constexpr int kMaxPolygammaOrder = 4;

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// psi(x) = d/dx ln Gamma(x) for x > 0.
double digamma(double x);

/// psi'(x) for x > 0.
double trigamma(double x);

/// psi^(n)(x) for 1 <= n <= kMaxPolygammaOrder and x > 0.
double polygamma(int n, double x);

/// ln Gamma(x + t) - ln Gamma(x + s). Requires x + s > 0 and x + t > 0.
double log_gamma_difference(double x, double s, double t);

/// psi(x + t) - psi(x + s). Requires x + s > 0 and x + t > 0.
double digamma_difference(double x, double s, double t);

/// psi^(n)(x + t) - psi^(n)(x + s), 1 <= n <= kMaxPolygammaOrder.
double polygamma_difference(int n, double x, double s, double t);

} // namespace egp
