#pragma once

///
/// \file egp.hpp
///
/// The function
///
///     z_{s,t}(x) = [Gamma(x+t) / Gamma(x+s)]^{1/(t-s)} - x,   s != t
///     z_{s,t}(x) = exp(psi(x+s)) - x,                          s == t
///
/// on x > -min(s, t), its first two derivatives, the Laplace-convolution
/// representation of z'', the gamma ratio itself and the two-sided ratio
/// bounds that follow from the monotonicity of z.
///
/// z is convex and decreasing when |t - s| < 1 and concave and increasing
/// when |t - s| > 1; ratio_bounds relies on that.
///

#include "egp/quadrature.hpp"

namespace egp {

/// Pairs whose gap is within this distance of 1 are flagged as near the
/// excluded boundary.
inline constexpr double kUnitGapWarning = 1e-9;

/// Below this gap the exponent quotient switches to the midpoint digamma.
inline constexpr double kDegenerateGap = 1e-8;

/// (s, t) with t - s != +-1. z is symmetric in (s, t); lo()/hi() give the
/// canonical order. The orientation as given matters only for gamma_ratio.
class ParameterPair
{
  public:
    ParameterPair(double s, double t);

    double s() const noexcept { return s_; }
    double t() const noexcept { return t_; }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    /// min(s, t); evaluations require x > -alpha().
    double alpha() const noexcept { return lo_; }
    /// |t - s|
    double gap() const noexcept { return hi_ - lo_; }

    /// t > s >= 0 as given.
    bool normalized() const noexcept { return t_ > s_ && s_ >= 0.0; }
    bool near_unit_gap() const noexcept;

  private:
    double s_;
    double t_;
    double lo_;
    double hi_;
};

struct BoundPair
{
    double lower = 0.0;
    double upper = 0.0;
};

double z_value(const ParameterPair& p, double x);

/// z'(x) = (z + x) (psi(x+t) - psi(x+s)) / (t - s) - 1.
double z_prime(const ParameterPair& p, double x);

/// z''(x) = (z + x) { [(psi(x+t) - psi(x+s))/(t-s)]^2
///                     + (psi'(x+t) - psi'(x+s))/(t-s) }.
double z_second_direct(const ParameterPair& p, double x);

/// z''(x) from the nested-integral representation
///
///     (z + x)/(t - s) * int_0^inf [ 1/((t-s) u) int_0^u Q_{s,t;u}(r) dr - q_{s,t}(u) ] u e^{-x u} du
///
/// Requires x > 0 and t > s >= 0 (canonical order). The inner integral runs
/// at 100x tighter tolerance than `cfg`.
QuadratureResult z_second_integral(const ParameterPair& p, double x,
                                   const QuadratureConfig& cfg = {});

/// Gamma(x + t) / Gamma(x + s), in the orientation given.
double gamma_ratio(const ParameterPair& p, double x);

/// Bounds on gamma_ratio(p, x) from z between z(x_ref) and its limit.
/// Requires t > s >= 0, |t - s| != 1, -s < x_ref <= x and x + lim z > 0.
BoundPair ratio_bounds(const ParameterPair& p, double x, double x_ref);

/// Estimate of lim_{x -> inf} z(x) by Richardson extrapolation in 1/x over
/// x_k = 100 * 4^k. Stops when successive diagonal entries differ by less
/// than tol / 10; throws DomainError past x = 1e12.
double z_limit(const ParameterPair& p, double tol = 1e-8);

} // namespace egp
